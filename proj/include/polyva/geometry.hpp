#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "polyva/common.hpp"

namespace polyva {

class Domain;

// Disjoint union of closed intervals [a,b], d = 1.
struct IntervalUnion {
  std::vector<std::pair<double, double>> intervals;
};

// Axis-aligned box, one [a,b] per axis.
struct Box {
  std::vector<std::pair<double, double>> bounds;
};

// Rotated ellipse in the plane; rotation in radians, counterclockwise.
struct Ellipse {
  Eigen::Vector2d center;
  Eigen::Vector2d semi_axes;
  double rotation = 0.0;
};

// Convex polygon in the plane, vertices in counterclockwise order.
struct ConvexPolygon {
  std::vector<Eigen::Vector2d> vertices;
};

struct DomainUnion {
  std::vector<Domain> parts;
};

class Domain {
 public:
  using Shape = std::variant<IntervalUnion, Box, Ellipse, ConvexPolygon, DomainUnion>;

  explicit Domain(Shape shape);
  // Enclose the shape in a caller-chosen box (must contain the tight one);
  // sampling and gridding then work relative to that box.
  Domain(Shape shape, Box enclosing_box);

  int dimension() const { return dimension_; }
  const Shape& shape() const { return shape_; }
  bool has_explicit_box() const { return explicit_box_; }
  // Axis-aligned box guaranteed to contain the domain (tight for the
  // primitive shapes unless an enclosing box was supplied).
  const Box& bounding_box() const { return bounding_box_; }

 private:
  Shape shape_;
  Box bounding_box_;
  int dimension_ = 0;
  bool explicit_box_ = false;
};

enum class Provenance { Equispaced, Random, Custom };

struct SampleSet {
  Matrix points;  // M x d, rows are sample locations
  Provenance provenance = Provenance::Custom;
  std::optional<std::uint64_t> seed;

  Index count() const { return points.rows(); }
  int dimension() const { return static_cast<int>(points.cols()); }
};

// Markov-inequality parameters driving the admissible-mesh spacing rule.
struct MeshSpec {
  double markov_constant = 2.0;  // C_M
  double markov_exponent = 2.0;  // r
  double c1 = 0.0;               // must satisfy 2*N*c1*exp(N*c1) < 1
  int degree = 1;                // n
};

// c1 = 1/(4N) meets the spacing-rule constraint for every N.
double default_c1(Index space_dimension);

bool indicator(const Domain& domain, const Eigen::Ref<const Vector>& x);

// Regular grid with the given step over the bounding box (centered so both
// end margins are at most spacing/2), filtered by the indicator. Throws if
// no grid node lands inside the domain.
SampleSet equispaced_mesh(const Domain& domain, double spacing);

// Largest grid spacing whose filtered node count reaches at least
// target_count; deterministic bisection. The result has count >= target.
SampleSet equispaced_mesh_for_count(const Domain& domain, Index target_count);

// Spacing 2*c1 / (C_M * n^r) from the mesh-size rule.
double admissible_spacing(const MeshSpec& spec);

// Uniform i.i.d. points in the domain by rejection from the bounding box;
// reproducible for a fixed seed. Throws after max_consecutive_rejections
// draws in a row land outside the domain.
SampleSet rejection_sample(const Domain& domain, Index count, std::uint64_t seed,
                           std::uint64_t max_consecutive_rejections = 1000000);

// ceil((c_r + 1) * M * ln M): random-mesh cardinality with failure
// probability at most M^{-c_r}.
Index randomized_mesh_count(Index deterministic_count, double c_r);

SampleSet make_sample_set(Matrix points, Provenance provenance,
                          std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace polyva
