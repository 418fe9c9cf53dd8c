#include "polyva/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyva {

namespace {

Box shape_bounding_box(const IntervalUnion& iu) {
  if (iu.intervals.empty())
    throw std::invalid_argument("interval union must have at least one piece");
  double lo = iu.intervals.front().first;
  double hi = iu.intervals.front().second;
  for (const auto& [a, b] : iu.intervals) {
    if (!(a < b)) throw std::invalid_argument("interval must satisfy a < b");
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return Box{{{lo, hi}}};
}

Box shape_bounding_box(const Box& box) {
  if (box.bounds.empty()) throw std::invalid_argument("box must have at least one axis");
  for (const auto& [a, b] : box.bounds)
    if (!(a < b)) throw std::invalid_argument("box bounds must satisfy a < b");
  return box;
}

Box shape_bounding_box(const Ellipse& e) {
  if (!(e.semi_axes(0) > 0.0) || !(e.semi_axes(1) > 0.0))
    throw std::invalid_argument("ellipse semi-axes must be positive");
  const double c = std::cos(e.rotation);
  const double s = std::sin(e.rotation);
  const double a = e.semi_axes(0);
  const double b = e.semi_axes(1);
  const double w = std::sqrt(a * a * c * c + b * b * s * s);
  const double h = std::sqrt(a * a * s * s + b * b * c * c);
  return Box{{{e.center(0) - w, e.center(0) + w}, {e.center(1) - h, e.center(1) + h}}};
}

Box shape_bounding_box(const ConvexPolygon& p) {
  if (p.vertices.size() < 3)
    throw std::invalid_argument("polygon needs at least three vertices");
  double xlo = p.vertices[0](0), xhi = xlo, ylo = p.vertices[0](1), yhi = ylo;
  for (const auto& v : p.vertices) {
    xlo = std::min(xlo, v(0));
    xhi = std::max(xhi, v(0));
    ylo = std::min(ylo, v(1));
    yhi = std::max(yhi, v(1));
  }
  return Box{{{xlo, xhi}, {ylo, yhi}}};
}

Box shape_bounding_box(const DomainUnion& u) {
  if (u.parts.empty()) throw std::invalid_argument("union must have at least one part");
  Box out = u.parts.front().bounding_box();
  for (const auto& part : u.parts) {
    const Box& pb = part.bounding_box();
    if (pb.bounds.size() != out.bounds.size())
      throw std::invalid_argument("union parts must share a dimension");
    for (size_t r = 0; r < out.bounds.size(); ++r) {
      out.bounds[r].first = std::min(out.bounds[r].first, pb.bounds[r].first);
      out.bounds[r].second = std::max(out.bounds[r].second, pb.bounds[r].second);
    }
  }
  return out;
}

int shape_dimension(const IntervalUnion&) { return 1; }
int shape_dimension(const Box& b) { return static_cast<int>(b.bounds.size()); }
int shape_dimension(const Ellipse&) { return 2; }
int shape_dimension(const ConvexPolygon&) { return 2; }
int shape_dimension(const DomainUnion& u) { return u.parts.front().dimension(); }

}  // namespace

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
  bounding_box_ = std::visit([](const auto& s) { return shape_bounding_box(s); }, shape_);
  dimension_ = std::visit([](const auto& s) { return shape_dimension(s); }, shape_);
}

Domain::Domain(Shape shape, Box enclosing_box) : Domain(std::move(shape)) {
  if (enclosing_box.bounds.size() != bounding_box_.bounds.size())
    throw std::invalid_argument("enclosing box dimension mismatch");
  for (size_t r = 0; r < bounding_box_.bounds.size(); ++r) {
    const double pad = 1e-12 * (bounding_box_.bounds[r].second -
                                bounding_box_.bounds[r].first);
    if (enclosing_box.bounds[r].first > bounding_box_.bounds[r].first + pad ||
        enclosing_box.bounds[r].second < bounding_box_.bounds[r].second - pad)
      throw std::invalid_argument("enclosing box does not contain the domain");
  }
  bounding_box_ = std::move(enclosing_box);
  explicit_box_ = true;
}

bool indicator(const Domain& domain, const Eigen::Ref<const Vector>& x) {
  if (x.size() != domain.dimension())
    throw std::invalid_argument("indicator: point dimension mismatch");
  for (Index r = 0; r < x.size(); ++r)
    if (!std::isfinite(x(r))) throw std::invalid_argument("indicator: point must be finite");

  struct Visitor {
    const Eigen::Ref<const Vector>& x;

    bool operator()(const IntervalUnion& iu) const {
      for (const auto& [a, b] : iu.intervals)
        if (x(0) >= a && x(0) <= b) return true;
      return false;
    }
    bool operator()(const Box& box) const {
      for (size_t r = 0; r < box.bounds.size(); ++r)
        if (x(static_cast<Index>(r)) < box.bounds[r].first ||
            x(static_cast<Index>(r)) > box.bounds[r].second)
          return false;
      return true;
    }
    bool operator()(const Ellipse& e) const {
      const double c = std::cos(e.rotation);
      const double s = std::sin(e.rotation);
      const double dx = x(0) - e.center(0);
      const double dy = x(1) - e.center(1);
      const double u = (c * dx + s * dy) / e.semi_axes(0);
      const double v = (-s * dx + c * dy) / e.semi_axes(1);
      return u * u + v * v <= 1.0;
    }
    bool operator()(const ConvexPolygon& p) const {
      const size_t n = p.vertices.size();
      for (size_t i = 0; i < n; ++i) {
        const auto& v0 = p.vertices[i];
        const auto& v1 = p.vertices[(i + 1) % n];
        const double cross =
            (v1(0) - v0(0)) * (x(1) - v0(1)) - (v1(1) - v0(1)) * (x(0) - v0(0));
        if (cross < 0.0) return false;
      }
      return true;
    }
    bool operator()(const DomainUnion& u) const {
      for (const auto& part : u.parts)
        if (indicator(part, x)) return true;
      return false;
    }
  };
  return std::visit(Visitor{x}, domain.shape());
}

double default_c1(Index space_dimension) {
  if (space_dimension < 1) throw std::invalid_argument("default_c1: N must be >= 1");
  return 1.0 / (4.0 * static_cast<double>(space_dimension));
}

double admissible_spacing(const MeshSpec& spec) {
  if (spec.markov_constant <= 0 || spec.markov_exponent <= 0 || spec.c1 <= 0 ||
      spec.degree < 1)
    throw std::invalid_argument("admissible_spacing: parameters must be positive");
  return 2.0 * spec.c1 /
         (spec.markov_constant * std::pow(static_cast<double>(spec.degree),
                                          spec.markov_exponent));
}

namespace {

// Walks the centered grid over the bounding box, invoking visit(x) for
// every node inside the domain. Returns the number of retained nodes.
template <typename Visit>
Index scan_grid(const Domain& domain, double spacing, Visit&& visit) {
  const Box& box = domain.bounding_box();
  const int d = domain.dimension();

  std::vector<std::vector<double>> axis_nodes(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) {
    const double a = box.bounds[static_cast<size_t>(r)].first;
    const double b = box.bounds[static_cast<size_t>(r)].second;
    const double len = b - a;
    const auto steps = static_cast<Index>(std::floor(len / spacing + 1e-9));
    const double margin = 0.5 * (len - static_cast<double>(steps) * spacing);
    for (Index i = 0; i <= steps; ++i)
      axis_nodes[static_cast<size_t>(r)].push_back(a + margin +
                                                   static_cast<double>(i) * spacing);
  }

  Index total = 1;
  for (const auto& nodes : axis_nodes) total *= static_cast<Index>(nodes.size());

  Index kept = 0;
  Vector x(d);
  std::vector<Index> idx(static_cast<size_t>(d), 0);
  for (Index flat = 0; flat < total; ++flat) {
    Index rem = flat;
    // Row-major over axes: last axis varies fastest.
    for (int r = d - 1; r >= 0; --r) {
      const auto n_r = static_cast<Index>(axis_nodes[static_cast<size_t>(r)].size());
      idx[static_cast<size_t>(r)] = rem % n_r;
      rem /= n_r;
    }
    for (int r = 0; r < d; ++r)
      x(r) = axis_nodes[static_cast<size_t>(r)][static_cast<size_t>(idx[static_cast<size_t>(r)])];
    if (indicator(domain, x)) {
      visit(static_cast<const Vector&>(x));
      ++kept;
    }
  }
  return kept;
}

Index count_equispaced(const Domain& domain, double spacing) {
  return scan_grid(domain, spacing, [](const Vector&) {});
}

}  // namespace

SampleSet equispaced_mesh(const Domain& domain, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("equispaced_mesh: spacing must be > 0");
  const int d = domain.dimension();
  const Index m = count_equispaced(domain, spacing);
  if (m == 0)
    throw std::runtime_error("equispaced_mesh: spacing too coarse, no node inside domain");

  Matrix points(m, d);
  Index row = 0;
  scan_grid(domain, spacing, [&](const Vector& x) { points.row(row++) = x.transpose(); });
  return SampleSet{std::move(points), Provenance::Equispaced, std::nullopt};
}

SampleSet equispaced_mesh_for_count(const Domain& domain, Index target_count) {
  if (target_count < 1)
    throw std::invalid_argument("equispaced_mesh_for_count: target must be >= 1");
  const Box& box = domain.bounding_box();
  const int d = domain.dimension();

  double volume = 1.0;
  double max_extent = 0.0;
  for (const auto& [a, b] : box.bounds) {
    volume *= (b - a);
    max_extent = std::max(max_extent, b - a);
  }
  // Node count grows as spacing shrinks; bracket then bisect on log-spacing.
  double hi = 2.0 * max_extent;
  double lo = std::pow(volume / (static_cast<double>(target_count) * 8.0 + 8.0),
                       1.0 / static_cast<double>(d));
  lo = std::min(lo, hi / 4.0);
  auto count_at = [&](double s) { return count_equispaced(domain, s); };
  for (int guard = 0; guard < 60 && count_at(lo) < target_count; ++guard) lo *= 0.5;
  if (count_at(lo) < target_count)
    throw std::runtime_error("equispaced_mesh_for_count: cannot reach target count");
  for (int it = 0; it < 80; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (count_at(mid) >= target_count)
      lo = mid;
    else
      hi = mid;
  }
  return equispaced_mesh(domain, lo);
}

SampleSet rejection_sample(const Domain& domain, Index count, std::uint64_t seed,
                           std::uint64_t max_consecutive_rejections) {
  if (count < 1) throw std::invalid_argument("rejection_sample: count must be >= 1");
  const Box& box = domain.bounding_box();
  const int d = domain.dimension();
  Rng rng(seed);

  Matrix points(count, d);
  Vector x(d);
  Index accepted = 0;
  std::uint64_t consecutive = 0;
  while (accepted < count) {
    for (int r = 0; r < d; ++r)
      x(r) = rng.uniform(box.bounds[static_cast<size_t>(r)].first,
                         box.bounds[static_cast<size_t>(r)].second);
    if (indicator(domain, x)) {
      points.row(accepted++) = x.transpose();
      consecutive = 0;
    } else if (++consecutive >= max_consecutive_rejections) {
      throw std::runtime_error(
          "rejection_sample: rejection cap hit (domain volume too small?)");
    }
  }
  return SampleSet{std::move(points), Provenance::Random, seed};
}

Index randomized_mesh_count(Index deterministic_count, double c_r) {
  if (deterministic_count < 2)
    throw std::invalid_argument("randomized_mesh_count: M must be >= 2");
  if (!(c_r > 0.0)) throw std::invalid_argument("randomized_mesh_count: c_r must be > 0");
  const double m = static_cast<double>(deterministic_count);
  return static_cast<Index>(std::ceil((c_r + 1.0) * m * std::log(m)));
}

SampleSet make_sample_set(Matrix points, Provenance provenance,
                          std::optional<std::uint64_t> seed) {
  if (points.rows() < 1) throw std::invalid_argument("sample set must be non-empty");
  // Detect duplicate rows via a lexicographic sort of row indices.
  std::vector<Index> order(static_cast<size_t>(points.rows()));
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Index c = 0; c < points.cols(); ++c) {
      if (points(a, c) != points(b, c)) return points(a, c) < points(b, c);
    }
    return false;
  });
  for (size_t i = 1; i < order.size(); ++i)
    if (points.row(order[i - 1]) == points.row(order[i]))
      throw std::invalid_argument("sample set contains duplicate points");
  return SampleSet{std::move(points), provenance, seed};
}

}  // namespace polyva
