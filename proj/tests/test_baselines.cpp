#include <doctest.h>

#include <cmath>

#include "polyva/baselines.hpp"
#include "polyva/diagnostics.hpp"

using namespace polyva;

namespace {

SampleSet interval_samples(double a, double b, Index m) {
  Matrix pts(m, 1);
  for (Index i = 0; i < m; ++i)
    pts(i, 0) = a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1);
  return make_sample_set(std::move(pts), Provenance::Equispaced);
}

}  // namespace

TEST_CASE("constant data gives a constant monomial fit") {
  const SampleSet samples = interval_samples(-2.0, 3.0, 25);
  const Vector f = Vector::Constant(25, 4.5);
  const MonomialApproximant approx =
      vandermonde_fit(samples, f, total_degree_indices(1, 4));
  CHECK(approx.c(0) == doctest::Approx(4.5).epsilon(1e-10));
  for (Index j = 1; j < 5; ++j) CHECK(std::abs(approx.c(j)) < 1e-10);
}

TEST_CASE("small interpolation system is solved exactly in raw mode") {
  // Exact solve oracle: p(x) = 1 + x^2 interpolates (0,1), (1,2), (2,5).
  Matrix pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  Vector f(3);
  f << 1.0, 2.0, 5.0;
  const MonomialApproximant approx = vandermonde_fit(
      make_sample_set(pts, Provenance::Custom), f, total_degree_indices(1, 2),
      /*rescale_to_unit_box=*/false);
  CHECK(approx.c(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(approx.c(1)) < 1e-12);
  CHECK(approx.c(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(approx.kappa2 > 1.0);
}

TEST_CASE("raw Vandermonde stagnates on the disjoint domain while V+A improves") {
  const Domain gap{IntervalUnion{{{-3.0, -1.0}, {3.0, 4.0}}}};
  auto f = [](const Vector& x) { return x(0) * std::cos(10.0 * x(0)); };

  for (int n : {44, 59}) {
    const Index n_basis = n + 1;
    const SampleSet samples = equispaced_mesh_for_count(gap, n_basis * n_basis);
    Vector values(samples.count());
    for (Index i = 0; i < samples.count(); ++i)
      values(i) = f(samples.points.row(i).transpose());
    const SampleSet mesh = equispaced_mesh_for_count(gap, 10 * samples.count());

    const MonomialApproximant mono = vandermonde_fit(
        samples, values, total_degree_indices(1, n), /*rescale_to_unit_box=*/false);
    const double mono_err = sup_difference(
        [&](const Matrix& pts) { return eval_monomial(mono, pts); }, f, mesh);
    const ArnoldiFit va = fit_mv(samples, values, total_degree_indices(1, n));
    const double va_err = sup_error(va.approximant, f, mesh);

    CHECK(mono.kappa2 > 1e15);
    CHECK(mono_err >= 1e-5);   // stagnation band around 1e-4
    CHECK(mono_err <= 1e-1);
    CHECK(va_err < 1e-6);
    CHECK(va_err < mono_err / 10.0);
  }
}

TEST_CASE("well-conditioned instances agree between monomial and Arnoldi routes") {
  const SampleSet samples = interval_samples(-1.0, 1.0, 120);
  auto f = [](const Vector& x) { return std::sin(2.0 * x(0)); };
  Vector values(samples.count());
  for (Index i = 0; i < samples.count(); ++i)
    values(i) = f(samples.points.row(i).transpose());

  const MultiIndexSet idx = total_degree_indices(1, 8);
  const MonomialApproximant mono = vandermonde_fit(samples, values, idx);
  REQUIRE(mono.kappa2 < 1e6);
  const ArnoldiFit va = fit_mv(samples, values, idx);

  const SampleSet mesh = interval_samples(-1.0, 1.0, 1000);
  const Vector mono_vals = eval_monomial(mono, mesh.points);
  const Vector va_vals = eval_mv(va.approximant, mesh.points);
  CHECK((mono_vals - va_vals).lpNorm<Eigen::Infinity>() <=
        1e-6 * (1.0 + va_vals.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("bounding tensor on a box domain coincides with the direct fit") {
  const Domain box{Box{{{0.0, 1.0}, {0.0, 2.0}}}};
  auto f = [](const Vector& x) { return std::sin(x(0) + 0.5 * x(1)); };
  const MultiIndexSet idx = total_degree_indices(2, 6);

  const BoundingTensorFit bt = bounding_tensor_fit(box, f, idx, 3 * idx.size(), 21);
  CHECK(bt.in_domain_fraction == 1.0);

  Vector values(bt.box_samples.count());
  for (Index i = 0; i < bt.box_samples.count(); ++i)
    values(i) = f(bt.box_samples.points.row(i).transpose());
  const ArnoldiFit direct = fit_mv(bt.box_samples, values, idx);
  CHECK((bt.fit.approximant.d - direct.approximant.d).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("bounding tensor is less accurate than direct V+A on the ellipse") {
  const double ratio = 0.45942883;
  const Domain ellipse{Ellipse{{2.0, 3.0}, {2.6, 2.6 * ratio}, M_PI / 4.0}};
  auto f = [](const Vector& x) {
    return std::sin((x(0) * x(0) + x(1) * x(1) + x(0) * x(1)) / 5.0);
  };

  for (int n : {8, 12}) {
    const MultiIndexSet idx = total_degree_indices(2, n);
    const double nd = static_cast<double>(idx.size());
    const Index m = static_cast<Index>(std::ceil(nd * nd * std::log(nd)));

    const SampleSet samples = rejection_sample(ellipse, m, 31);
    Vector values(samples.count());
    for (Index i = 0; i < samples.count(); ++i)
      values(i) = f(samples.points.row(i).transpose());
    const ArnoldiFit va = fit_mv(samples, values, idx);

    const BoundingTensorFit bt = bounding_tensor_fit(ellipse, f, idx, m, 31);

    const SampleSet mesh = equispaced_mesh_for_count(ellipse, 10 * m);
    const double va_err = sup_error(va.approximant, f, mesh);
    const double bt_err = sup_error(bt.fit.approximant, f, mesh);
    CHECK(bt_err > va_err);
  }
}

TEST_CASE("vandermonde preconditions") {
  const SampleSet samples = interval_samples(0.0, 1.0, 4);
  const Vector f = Vector::Zero(4);
  CHECK_THROWS_AS(vandermonde_fit(samples, f, total_degree_indices(1, 5)),
                  std::invalid_argument);
}
