#pragma once

#include <functional>

#include "polyva/arnoldi.hpp"
#include "polyva/geometry.hpp"

namespace polyva {

struct DiagnosticsReport {
  double ortho_defect = 0.0;
  double lebesgue_estimate = 0.0;
  double qqstar_factor = 0.0;
  double s_n = 0.0;
  double q_max = 0.0;
  double sup_error = 0.0;
  double legendre_deviation = 0.0;  // 1D intervals only
};

// Frobenius defect ||(1/M) Q^T Q - I||_F; doubles as the eps_m estimate fed
// to the weighted-sampling stability constants.
double ortho_defect(const ArnoldiBasis& basis);

// Estimate of the least-squares operator norm over the evaluation mesh:
// max_y (1/M) sum_i |phi(y) . Q_i|. The mesh should be much finer than the
// sample set for the estimate to be meaningful.
double lebesgue_estimate(const ArnoldiBasis& basis, const SampleSet& eval_mesh);

// (1/M) ||Q Q^T||_inf, the sample-side factor of the near-optimality bound.
double qqstar_factor(const ArnoldiBasis& basis);

// Mean absolute row sum of Q: (1/M) sum_i |sum_j phi_j(x_i)|.
double s_n_statistic(const ArnoldiBasis& basis);

double q_max_statistic(const ArnoldiBasis& basis);

// How far the discrete basis strays from the scaled Legendre polynomials
// sqrt(2j-1) P_{j-1}: max over j of the sup deviation on a fine interval
// mesh, relative to the sqrt(2j-1) size of the target polynomial. The fine
// mesh (mesh_factor x samples) is what exposes the between-node blow-up of
// under-sampled bases. Only defined for 1D bases; endpoints come from the
// sample range.
double legendre_deviation(const ArnoldiBasis& basis, Index mesh_factor = 10);

double sup_error(const Approximant& approx, const std::function<double(const Vector&)>& f,
                 const SampleSet& eval_mesh);

// Sup-norm distance between two point evaluators over a mesh.
double sup_difference(const std::function<Vector(const Matrix&)>& model,
                      const std::function<double(const Vector&)>& f,
                      const SampleSet& eval_mesh);

// Test family of prescribed smoothness on [-1,1]^d: sum_r |x_r|^{2k+1} for
// k in {0,1,2}; k = -1 selects the C^inf member sum_r sin(exp(x_r) cos x_r).
std::function<double(const Vector&)> smoothness_family(int k);

// Log-log slope of the fine-mesh sup error against the degree, fitted over
// the given degrees with M = N^2 equispaced samples per fit.
double smoothness_slope(const Domain& domain, int k, const std::vector<int>& degrees);

// Least-squares slope of log(y) against log(x); the building block for the
// growth-rate checks.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace polyva
