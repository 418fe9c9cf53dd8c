#include "polyva/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "polyva/exprlang.hpp"
#include "polyva/indexing.hpp"
#include "polyva/serialize.hpp"

namespace polyva {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
}

void validate_domain_json(const json& j, const std::string& where) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "interval_union")
    check_keys(j, where, {"type", "intervals", "bounding_box"});
  else if (type == "box")
    check_keys(j, where, {"type", "bounds", "bounding_box"});
  else if (type == "ellipse")
    check_keys(j, where, {"type", "center", "semi_axes", "rotation", "bounding_box"});
  else if (type == "polygon")
    check_keys(j, where, {"type", "vertices", "bounding_box"});
  else if (type == "union") {
    check_keys(j, where, {"type", "parts", "bounding_box"});
    for (const auto& part : j.at("parts")) validate_domain_json(part, where + ".parts[]");
  } else {
    throw std::invalid_argument("unknown domain type '" + type + "' in " + where);
  }
}

}  // namespace

Index SampleRule::evaluate(Index space_dimension) const {
  const double nd = static_cast<double>(space_dimension);
  Index m = 0;
  switch (kind) {
    case Kind::NSquared:
      m = space_dimension * space_dimension;
      break;
    case Kind::NSquaredLogN:
      m = static_cast<Index>(std::ceil(nd * nd * std::log(nd)));
      break;
    case Kind::Explicit:
      m = explicit_count;
      break;
  }
  return std::max(m, space_dimension + 1);
}

Index SubsampleRule::evaluate(Index space_dimension) const {
  const double nd = static_cast<double>(space_dimension);
  Index m = 0;
  switch (kind) {
    case Kind::NLogN:
      m = static_cast<Index>(std::ceil(constant * nd * std::log(nd)));
      break;
    case Kind::Explicit:
      m = explicit_count;
      break;
  }
  return std::max(m, space_dimension);
}

Domain ExperimentConfig::domain_from_config(const json& j) {
  validate_domain_json(j, "domain");
  return domain_from_json(j);
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"domain", "function", "space", "sampling", "method", "weighted", "lawson",
              "eval", "diagnostics", "output"});
  ExperimentConfig cfg;

  cfg.domain_json = j.at("domain");
  validate_domain_json(cfg.domain_json, "domain");
  const Domain domain = domain_from_json(cfg.domain_json);

  cfg.function_source = j.at("function").get<std::string>();
  try {
    parse_expression(cfg.function_source, domain.dimension());
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("config.function: ") + e.what());
  }

  const json& space = j.at("space");
  check_keys(space, "space", {"kind", "sweep"});
  const std::string kind = space.at("kind").get<std::string>();
  if (kind == "total")
    cfg.space_kind = SpaceKind::TotalDegree;
  else if (kind == "max")
    cfg.space_kind = SpaceKind::MaxDegree;
  else
    throw std::invalid_argument("space.kind must be 'total' or 'max'");

  const json& sweep = space.at("sweep");
  check_keys(sweep, "space.sweep", {"n", "N"});
  if (sweep.contains("n") == sweep.contains("N"))
    throw std::invalid_argument("space.sweep needs exactly one of 'n' or 'N'");
  if (sweep.contains("n")) {
    for (const auto& v : sweep.at("n")) cfg.degree_sweep.push_back(v.get<int>());
  } else {
    for (const auto& v : sweep.at("N")) {
      const Index target = v.get<Index>();
      // Invert the dimension formula by scanning degrees.
      int n = 0;
      while (true) {
        const Index dim = cfg.space_kind == SpaceKind::TotalDegree
                              ? total_degree_indices(domain.dimension(), n).size()
                              : max_degree_indices(domain.dimension(), n).size();
        if (dim == target) break;
        if (dim > target)
          throw std::invalid_argument("space.sweep.N value " + std::to_string(target) +
                                      " is not a valid space dimension");
        ++n;
      }
      cfg.degree_sweep.push_back(n);
    }
  }
  if (cfg.degree_sweep.empty()) throw std::invalid_argument("space.sweep must be non-empty");
  for (size_t i = 0; i < cfg.degree_sweep.size(); ++i) {
    if (cfg.degree_sweep[i] < 0)
      throw std::invalid_argument("sweep degrees must be non-negative");
    if (i > 0 && cfg.degree_sweep[i] <= cfg.degree_sweep[i - 1])
      throw std::invalid_argument("sweep degrees must be strictly increasing");
  }

  const json& sampling = j.at("sampling");
  check_keys(sampling, "sampling", {"kind", "M_rule", "seed"});
  const std::string skind = sampling.at("kind").get<std::string>();
  if (skind == "equispaced")
    cfg.sampling_kind = SamplingKind::Equispaced;
  else if (skind == "random")
    cfg.sampling_kind = SamplingKind::Random;
  else
    throw std::invalid_argument("sampling.kind must be 'equispaced' or 'random'");
  const json& mrule = sampling.at("M_rule");
  if (mrule.is_string()) {
    const std::string rule = mrule.get<std::string>();
    if (rule == "N^2")
      cfg.sample_rule.kind = SampleRule::Kind::NSquared;
    else if (rule == "N^2logN")
      cfg.sample_rule.kind = SampleRule::Kind::NSquaredLogN;
    else
      throw std::invalid_argument("sampling.M_rule must be 'N^2', 'N^2logN', or an integer");
  } else {
    cfg.sample_rule.kind = SampleRule::Kind::Explicit;
    cfg.sample_rule.explicit_count = mrule.get<Index>();
    if (cfg.sample_rule.explicit_count < 2)
      throw std::invalid_argument("sampling.M_rule integer must be >= 2");
  }
  if (sampling.contains("seed")) cfg.seed = sampling.at("seed").get<std::uint64_t>();
  if (cfg.sampling_kind == SamplingKind::Random && !cfg.seed)
    throw std::invalid_argument("sampling.seed is required for random sampling");

  const std::string method = j.at("method").get<std::string>();
  if (method == "va") cfg.method = Method::Va;
  else if (method == "vandermonde") cfg.method = Method::Vandermonde;
  else if (method == "bounding_tensor") cfg.method = Method::BoundingTensor;
  else if (method == "va_weight") cfg.method = Method::VaWeight;
  else if (method == "qr_weight") cfg.method = Method::QrWeight;
  else if (method == "va_lawson") cfg.method = Method::VaLawson;
  else throw std::invalid_argument("unknown method '" + method + "'");

  if (j.contains("weighted")) {
    const json& weighted = j.at("weighted");
    check_keys(weighted, "weighted", {"Mhat_rule", "constant"});
    if (weighted.contains("constant"))
      cfg.subsample_rule.constant = weighted.at("constant").get<double>();
    if (weighted.contains("Mhat_rule")) {
      const json& rule = weighted.at("Mhat_rule");
      if (rule.is_string()) {
        if (rule.get<std::string>() != "NlogN")
          throw std::invalid_argument("weighted.Mhat_rule must be 'NlogN' or an integer");
        cfg.subsample_rule.kind = SubsampleRule::Kind::NLogN;
      } else {
        cfg.subsample_rule.kind = SubsampleRule::Kind::Explicit;
        cfg.subsample_rule.explicit_count = rule.get<Index>();
      }
    }
  }

  if (j.contains("lawson")) {
    const json& lawson = j.at("lawson");
    check_keys(lawson, "lawson", {"iters"});
    cfg.lawson_iterations = lawson.value("iters", 10);
    if (cfg.lawson_iterations < 0)
      throw std::invalid_argument("lawson.iters must be >= 0");
  }

  if (j.contains("eval")) {
    const json& eval = j.at("eval");
    check_keys(eval, "eval", {"K_factor"});
    cfg.eval_k_factor = eval.value("K_factor", 10);
    if (cfg.eval_k_factor < 1) throw std::invalid_argument("eval.K_factor must be >= 1");
  }

  if (j.contains("diagnostics")) {
    const json& diag = j.at("diagnostics");
    check_keys(diag, "diagnostics", {"lebesgue", "qqstar"});
    cfg.diag_lebesgue = diag.value("lebesgue", false);
    cfg.diag_qqstar = diag.value("qqstar", false);
  }

  if (j.contains("output")) cfg.output_path = j.at("output").get<std::string>();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(json::parse(read_text_file(path)));
}

std::string method_name(Method method) {
  switch (method) {
    case Method::Va: return "va";
    case Method::Vandermonde: return "vandermonde";
    case Method::BoundingTensor: return "bounding_tensor";
    case Method::VaWeight: return "va_weight";
    case Method::QrWeight: return "qr_weight";
    case Method::VaLawson: return "va_lawson";
  }
  return "unknown";
}

}  // namespace polyva
