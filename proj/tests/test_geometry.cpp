#include <doctest.h>

#include <cmath>

#include "polyva/geometry.hpp"

using namespace polyva;

namespace {

Vector point1(double x) {
  Vector v(1);
  v << x;
  return v;
}

Vector point2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

// Ellipse enclosed in [0,4]x[0,6] with area exactly 59.59% of the box:
// semi-axes (2, b) with b = 0.5959 * 24 / (2 pi).
Domain paper_ellipse() {
  return Domain{Ellipse{{2.0, 3.0}, {2.0, 2.2760565}, 0.0},
                Box{{{0.0, 4.0}, {0.0, 6.0}}}};
}

}  // namespace

TEST_CASE("indicator basics") {
  const Domain ellipse{Ellipse{{2.0, 3.0}, {2.0, 3.0}, 0.0}};
  CHECK(indicator(ellipse, point2(2.0, 3.0)));
  CHECK(indicator(ellipse, point2(4.0, 3.0)));   // boundary is inside
  CHECK_FALSE(indicator(ellipse, point2(4.0, 5.9)));

  const Domain gap{IntervalUnion{{{-3.0, -1.0}, {3.0, 4.0}}}};
  CHECK_FALSE(indicator(gap, point1(0.0)));
  CHECK(indicator(gap, point1(-2.0)));
  CHECK(indicator(gap, point1(4.0)));

  const Domain box{Box{{{-1.0, 4.0}, {-1.0, 6.0}}}};
  CHECK(indicator(box, point2(4.0, 6.0)));  // closed corner
  CHECK_FALSE(indicator(box, point2(4.1, 6.0)));

  CHECK_THROWS_AS(indicator(box, point1(0.0)), std::invalid_argument);
}

TEST_CASE("convex polygon indicator and bounding box") {
  const Domain pentagon{ConvexPolygon{
      {{0.0, 0.0}, {4.0, 0.0}, {5.0, 2.0}, {2.5, 4.0}, {-0.5, 2.0}}}};
  CHECK(indicator(pentagon, point2(2.0, 2.0)));
  CHECK(indicator(pentagon, point2(0.0, 0.0)));   // vertex
  CHECK(indicator(pentagon, point2(2.0, 0.0)));   // edge
  CHECK_FALSE(indicator(pentagon, point2(5.0, 4.0)));
  CHECK(pentagon.bounding_box().bounds[0].first == doctest::Approx(-0.5));
  CHECK(pentagon.bounding_box().bounds[1].second == doctest::Approx(4.0));
}

TEST_CASE("equispaced mesh on an interval hits the exact uniform grid") {
  const Domain interval{IntervalUnion{{{-1.0, 1.0}}}};
  const SampleSet mesh = equispaced_mesh(interval, 0.25);
  REQUIRE(mesh.count() == 9);
  for (Index i = 0; i < 9; ++i)
    CHECK(mesh.points(i, 0) == doctest::Approx(-1.0 + 0.25 * static_cast<double>(i)));
}

TEST_CASE("equispaced mesh on a box keeps every grid node") {
  const Domain box{Box{{{-1.0, 4.0}, {-1.0, 6.0}}}};
  const SampleSet mesh = equispaced_mesh(box, 1.0);
  CHECK(mesh.count() == 6 * 8);  // per-axis node counts multiply
  for (Index i = 0; i < mesh.count(); ++i)
    CHECK(indicator(box, mesh.points.row(i).transpose()));
}

TEST_CASE("equispaced_mesh_for_count reaches the target") {
  const Domain gap{IntervalUnion{{{-3.0, -1.0}, {3.0, 4.0}}}};
  for (Index target : {25, 100, 900}) {
    const SampleSet mesh = equispaced_mesh_for_count(gap, target);
    CHECK(mesh.count() >= target);
    CHECK(mesh.count() <= target + target / 10 + 4);
  }
}

TEST_CASE("fine equispaced mesh on the enclosed ellipse retains ~59.6% of box nodes") {
  const Domain ellipse = paper_ellipse();
  const Box& box = ellipse.bounding_box();
  CHECK(box.bounds[0].second == 4.0);  // the enclosing box, not the tight one
  CHECK(box.bounds[1].second == 6.0);
  const double spacing = 0.01;
  const SampleSet mesh = equispaced_mesh(ellipse, spacing);
  double nodes_x = std::floor((box.bounds[0].second - box.bounds[0].first) / spacing) + 1;
  double nodes_y = std::floor((box.bounds[1].second - box.bounds[1].first) / spacing) + 1;
  const double fraction = static_cast<double>(mesh.count()) / (nodes_x * nodes_y);
  CHECK(fraction == doctest::Approx(0.596).epsilon(0.01));
}

TEST_CASE("explicit enclosing boxes must contain the shape") {
  const Ellipse shape{{2.0, 3.0}, {2.0, 2.2760565}, 0.0};
  CHECK_THROWS_AS(Domain(shape, Box{{{0.0, 3.0}, {0.0, 6.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(Domain(shape, Box{{{0.0, 4.0}}}), std::invalid_argument);
  const Domain ok{shape, Box{{{0.0, 4.0}, {0.0, 6.0}}}};
  CHECK(ok.has_explicit_box());
}

TEST_CASE("admissible spacing formula") {
  CHECK(admissible_spacing({2.0, 2.0, 0.05, 4}) == doctest::Approx(0.003125));
  CHECK(admissible_spacing({1.0, 2.0, 0.5, 1}) == doctest::Approx(1.0));
  // Default c1 = 1/(4N) keeps the constraint 2*N*c1*exp(N*c1) < 1.
  const double c1 = default_c1(5);
  const double constraint = 2.0 * 5.0 * c1 * std::exp(5.0 * c1);
  CHECK(constraint == doctest::Approx(0.642).epsilon(1e-3));
  CHECK(constraint < 1.0);
}

TEST_CASE("rejection sampling is reproducible and stays inside the domain") {
  const Domain ellipse = paper_ellipse();
  const SampleSet a = rejection_sample(ellipse, 500, 42);
  const SampleSet b = rejection_sample(ellipse, 500, 42);
  CHECK(a.points == b.points);
  CHECK(a.count() == 500);
  for (Index i = 0; i < a.count(); ++i)
    CHECK(indicator(ellipse, a.points.row(i).transpose()));
  const SampleSet c = rejection_sample(ellipse, 500, 43);
  CHECK(a.points != c.points);

  const SampleSet single = rejection_sample(ellipse, 1, 7);
  CHECK(single.count() == 1);
}

TEST_CASE("rejection sampling on a box accepts every draw") {
  const Domain box{Box{{{0.0, 1.0}, {0.0, 1.0}}}};
  // With acceptance rate 1 the draw stream has exactly M * d uniforms.
  const SampleSet samples = rejection_sample(box, 1000, 3);
  Rng rng(3);
  for (Index i = 0; i < 10; ++i)
    for (Index c = 0; c < 2; ++c)
      CHECK(samples.points(i, c) == doctest::Approx(rng.next_double()).epsilon(1e-15));
}

TEST_CASE("rejection acceptance rate on the enclosed ellipse matches 59.59%") {
  const Domain ellipse = paper_ellipse();
  const Box& box = ellipse.bounding_box();
  Rng rng(123);
  Vector x(2);
  Index hits = 0;
  const Index draws = 100000;
  for (Index i = 0; i < draws; ++i) {
    x(0) = rng.uniform(box.bounds[0].first, box.bounds[0].second);
    x(1) = rng.uniform(box.bounds[1].first, box.bounds[1].second);
    if (indicator(ellipse, x)) ++hits;
  }
  const double rate = static_cast<double>(hits) / static_cast<double>(draws);
  CHECK(rate == doctest::Approx(0.5959).epsilon(0.017));
}

TEST_CASE("randomized mesh count formula (natural log)") {
  CHECK(randomized_mesh_count(100, 1.0) == 922);
  CHECK(randomized_mesh_count(2, 1.0) == 3);
  // ceil(2 * 400 * ln 400) = ceil(4793.17...)
  CHECK(randomized_mesh_count(400, 1.0) == 4794);
  CHECK_THROWS_AS(randomized_mesh_count(1, 1.0), std::invalid_argument);
}

TEST_CASE("coverage: random interior points lie within the grid spacing") {
  const Domain pentagon{ConvexPolygon{
      {{0.0, 0.0}, {4.0, 0.0}, {5.0, 2.0}, {2.5, 4.0}, {-0.5, 2.0}}}};
  const double spacing = 0.05;
  const SampleSet mesh = equispaced_mesh(pentagon, spacing);
  const SampleSet probes = rejection_sample(pentagon, 10000, 99);
  for (Index i = 0; i < probes.count(); ++i) {
    double best = 1e300;
    for (Index j = 0; j < mesh.count(); ++j)
      best = std::min(best, (probes.points.row(i) - mesh.points.row(j))
                                .cwiseAbs()
                                .maxCoeff());
    CHECK(best <= spacing);
  }
}

TEST_CASE("union domains merge indicator and bounding box") {
  const Domain lshape{DomainUnion{{Domain{Box{{{0.0, 3.0}, {0.0, 2.0}}}},
                                  Domain{Box{{{0.0, 1.5}, {2.0, 3.5}}}}}}};
  CHECK(indicator(lshape, point2(2.5, 1.0)));
  CHECK(indicator(lshape, point2(1.0, 3.0)));
  CHECK_FALSE(indicator(lshape, point2(2.5, 3.0)));
  CHECK(lshape.bounding_box().bounds[0].second == doctest::Approx(3.0));
  CHECK(lshape.bounding_box().bounds[1].second == doctest::Approx(3.5));
}

TEST_CASE("duplicate points are rejected by the sample-set factory") {
  Matrix pts(3, 1);
  pts << 0.0, 1.0, 0.0;
  CHECK_THROWS_AS(make_sample_set(pts, Provenance::Custom), std::invalid_argument);
}

TEST_CASE("mesh spacing too coarse to land inside the domain raises") {
  // Grid nodes at 0.1 and 0.9 both miss the two thin pieces.
  const Domain thin{IntervalUnion{{{0.0, 0.01}, {0.99, 1.0}}}};
  CHECK_THROWS_AS(equispaced_mesh(thin, 0.8), std::runtime_error);
}
