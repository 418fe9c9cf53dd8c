#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyva/geometry.hpp"
#include "polyva/indexing.hpp"

namespace polyva {

enum class Method { Va, Vandermonde, BoundingTensor, VaWeight, QrWeight, VaLawson };

enum class SamplingKind { Equispaced, Random };

struct SampleRule {
  enum class Kind { NSquared, NSquaredLogN, Explicit } kind = Kind::NSquared;
  Index explicit_count = 0;

  Index evaluate(Index space_dimension) const;
};

struct SubsampleRule {
  enum class Kind { NLogN, Explicit } kind = Kind::NLogN;
  Index explicit_count = 0;
  double constant = 4.0;

  Index evaluate(Index space_dimension) const;
};

struct ExperimentConfig {
  nlohmann::json domain_json;
  std::string function_source;
  SpaceKind space_kind = SpaceKind::TotalDegree;
  std::vector<int> degree_sweep;  // always stored as n values
  SamplingKind sampling_kind = SamplingKind::Equispaced;
  SampleRule sample_rule;
  std::optional<std::uint64_t> seed;
  Method method = Method::Va;
  SubsampleRule subsample_rule;
  int lawson_iterations = 10;
  int eval_k_factor = 10;
  bool diag_lebesgue = false;
  bool diag_qqstar = false;
  std::optional<std::string> output_path;

  Domain make_domain() const { return domain_from_config(domain_json); }

  static Domain domain_from_config(const nlohmann::json& j);
};

// Parses and validates a config document; unknown keys anywhere are errors.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

std::string method_name(Method method);

}  // namespace polyva
