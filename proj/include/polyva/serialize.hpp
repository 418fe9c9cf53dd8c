#pragma once

#include <string>

#include <json.hpp>

#include "polyva/arnoldi.hpp"
#include "polyva/geometry.hpp"

namespace polyva {

nlohmann::json domain_to_json(const Domain& domain);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json index_set_to_json(const MultiIndexSet& set);
MultiIndexSet index_set_from_json(const nlohmann::json& j);

// Approximants serialize with the domain they were fitted on so evaluation
// can warn about extrapolation.
struct StoredApproximant {
  Approximant approximant;
  Domain domain;
};

nlohmann::json approximant_to_json(const Approximant& approx, const Domain& domain);
StoredApproximant approximant_from_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace polyva
