#include "polyva/serialize.hpp"

#include <fstream>
#include <sstream>

namespace polyva {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c)
      m(i, c) = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>();
  return m;
}

}  // namespace

json domain_to_json(const Domain& domain) {
  struct Visitor {
    json operator()(const IntervalUnion& iu) const {
      json intervals = json::array();
      for (const auto& [a, b] : iu.intervals) intervals.push_back({a, b});
      return {{"type", "interval_union"}, {"intervals", intervals}};
    }
    json operator()(const Box& box) const {
      json bounds = json::array();
      for (const auto& [a, b] : box.bounds) bounds.push_back({a, b});
      return {{"type", "box"}, {"bounds", bounds}};
    }
    json operator()(const Ellipse& e) const {
      return {{"type", "ellipse"},
              {"center", {e.center(0), e.center(1)}},
              {"semi_axes", {e.semi_axes(0), e.semi_axes(1)}},
              {"rotation", e.rotation}};
    }
    json operator()(const ConvexPolygon& p) const {
      json vertices = json::array();
      for (const auto& v : p.vertices) vertices.push_back({v(0), v(1)});
      return {{"type", "polygon"}, {"vertices", vertices}};
    }
    json operator()(const DomainUnion& u) const {
      json parts = json::array();
      for (const auto& part : u.parts) parts.push_back(domain_to_json(part));
      return {{"type", "union"}, {"parts", parts}};
    }
  };
  json j = std::visit(Visitor{}, domain.shape());
  if (domain.has_explicit_box()) {
    json bounds = json::array();
    for (const auto& [a, b] : domain.bounding_box().bounds) bounds.push_back({a, b});
    j["bounding_box"] = bounds;
  }
  return j;
}

Domain domain_from_json(const json& j) {
  auto build = [&](Domain::Shape shape) {
    if (!j.contains("bounding_box")) return Domain{std::move(shape)};
    Box box;
    for (const auto& pair : j.at("bounding_box"))
      box.bounds.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    return Domain{std::move(shape), std::move(box)};
  };

  const std::string type = j.at("type").get<std::string>();
  if (type == "interval_union") {
    IntervalUnion iu;
    for (const auto& pair : j.at("intervals"))
      iu.intervals.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    return build(iu);
  }
  if (type == "box") {
    Box box;
    for (const auto& pair : j.at("bounds"))
      box.bounds.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    return build(box);
  }
  if (type == "ellipse") {
    Ellipse e;
    e.center = Eigen::Vector2d(j.at("center").at(0).get<double>(),
                               j.at("center").at(1).get<double>());
    e.semi_axes = Eigen::Vector2d(j.at("semi_axes").at(0).get<double>(),
                                  j.at("semi_axes").at(1).get<double>());
    e.rotation = j.value("rotation", 0.0);
    return build(e);
  }
  if (type == "polygon") {
    ConvexPolygon p;
    for (const auto& v : j.at("vertices"))
      p.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return build(p);
  }
  if (type == "union") {
    DomainUnion u;
    for (const auto& part : j.at("parts")) u.parts.push_back(domain_from_json(part));
    return build(std::move(u));
  }
  throw std::invalid_argument("unknown domain type '" + type + "'");
}

json index_set_to_json(const MultiIndexSet& set) {
  return {{"dimension", set.dimension},
          {"kind", set.kind == SpaceKind::TotalDegree ? "total" : "max"},
          {"degree", set.degree}};
}

MultiIndexSet index_set_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int d = j.at("dimension").get<int>();
  const int n = j.at("degree").get<int>();
  if (kind == "total") return total_degree_indices(d, n);
  if (kind == "max") return max_degree_indices(d, n);
  throw std::invalid_argument("unknown space kind '" + kind + "'");
}

json approximant_to_json(const Approximant& approx, const Domain& domain) {
  json j;
  j["format"] = "polyva-approximant-v1";
  j["index_set"] = index_set_to_json(approx.index_set);
  j["domain"] = domain_to_json(domain);
  json d = json::array();
  for (Index i = 0; i < approx.d.size(); ++i) d.push_back(approx.d(i));
  j["coefficients"] = std::move(d);
  j["recurrence"] = matrix_to_json(approx.H);
  return j;
}

StoredApproximant approximant_from_json(const json& j) {
  if (j.value("format", "") != "polyva-approximant-v1")
    throw std::invalid_argument("unrecognized approximant format");
  StoredApproximant stored{Approximant{}, domain_from_json(j.at("domain"))};
  stored.approximant.index_set = index_set_from_json(j.at("index_set"));
  stored.approximant.H = matrix_from_json(j.at("recurrence"));
  const auto& d = j.at("coefficients");
  stored.approximant.d.resize(static_cast<Index>(d.size()));
  for (Index i = 0; i < stored.approximant.d.size(); ++i)
    stored.approximant.d(i) = d.at(static_cast<size_t>(i)).get<double>();
  if (stored.approximant.d.size() != stored.approximant.index_set.size() ||
      stored.approximant.H.rows() != stored.approximant.index_set.size())
    throw std::invalid_argument("approximant fields have inconsistent sizes");
  return stored;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polyva
