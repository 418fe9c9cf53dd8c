#pragma once

#include <cstdint>
#include <functional>

#include "polyva/arnoldi.hpp"
#include "polyva/baselines.hpp"
#include "polyva/geometry.hpp"

namespace polyva {

// Leverage distribution over sample rows: pi_i proportional to the squared
// row norm of the orthogonal basis matrix.
struct LeverageDistribution {
  Vector pi;
};

// M_hat rows drawn i.i.d. from pi (with replacement), rescaled so the Gram
// matrix of the selection is an unbiased estimate of the identity.
struct WeightedSelection {
  std::vector<Index> rows;
  Matrix Qhat;
  Vector fhat;
};

struct GramReport {
  double kappa2 = 0.0;              // condition number of G = Qhat^T Qhat
  double spectral_deviation = 0.0;  // ||G - I||_2
  double stability_constant = 0.0;  // sqrt(1 + dh + em) / (1 - dh - em)
};

LeverageDistribution compute_pi(const Matrix& q);

inline LeverageDistribution compute_pi(const ArnoldiBasis& basis) {
  return compute_pi(basis.Q);
}

// ceil(4N(1+eps_m)/delta_hat^2 * ln(2N/alpha_hat)): subsample size that makes
// ||G - I||_2 <= delta_hat + eps_m hold with probability at least
// 1 - alpha_hat.
Index min_subsample_count(Index basis_size, double eps_m, double delta_hat,
                          double alpha_hat);

WeightedSelection select_and_scale(const Matrix& q, const Vector& values,
                                   const LeverageDistribution& pi, Index subsample_count,
                                   std::uint64_t seed);

inline WeightedSelection select_and_scale(const ArnoldiBasis& basis, const Vector& values,
                                          const LeverageDistribution& pi,
                                          Index subsample_count, std::uint64_t seed) {
  return select_and_scale(basis.Q, values, pi, subsample_count, seed);
}

GramReport gram_report(const WeightedSelection& selection, double delta_hat,
                       double eps_m);

struct VaWeightFit {
  Approximant approximant;  // evaluates through the full-sample basis recurrence
  GramReport gram;
  ArnoldiBasis basis;
  SampleSet samples;
  Vector values;
  LeverageDistribution pi;
  WeightedSelection selection;
  int resample_rounds = 0;
};

// Leverage-weighted V+A least squares: random sampling, rank check with
// bounded resampling, Arnoldi basis, leverage subsample, stable solve.
VaWeightFit va_weight_fit(const Domain& domain,
                          const std::function<double(const Vector&)>& f,
                          const MultiIndexSet& index_set, Index sample_count,
                          Index subsample_count, std::uint64_t seed,
                          int max_resample_rounds = 5);

// The QR basis has no evaluation recurrence; new points go through the
// monomials and one triangular solve against the R factor.
struct QrWeightApproximant {
  Vector d;       // coefficients w.r.t. the orthonormalized QR basis
  Matrix r_factor;  // N x N upper triangular, scaled so (1/M) Q^T Q = I
  MultiIndexSet index_set;
  AffineMap map;
};

struct QrWeightFit {
  QrWeightApproximant approximant;
  GramReport gram;
  Matrix q;  // full-sample orthonormalized basis (column norms sqrt(M))
  SampleSet samples;
  Vector values;
  LeverageDistribution pi;
  WeightedSelection selection;
};

// Same pipeline with the Arnoldi step replaced by a QR factorization of the
// monomial design matrix; kept as the comparison baseline.
QrWeightFit qr_weight_fit(const Domain& domain,
                          const std::function<double(const Vector&)>& f,
                          const MultiIndexSet& index_set, Index sample_count,
                          Index subsample_count, std::uint64_t seed,
                          bool rescale_to_unit_box = true);

Vector eval_qr_weight(const QrWeightApproximant& approx, const Matrix& eval_points);

}  // namespace polyva
