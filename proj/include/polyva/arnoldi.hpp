#pragma once

#include <cmath>
#include <limits>

#include "polyva/common.hpp"
#include "polyva/geometry.hpp"
#include "polyva/indexing.hpp"

namespace polyva {

// Discrete orthogonal basis produced by the Arnoldi/Stieltjes sweep over the
// sample measure. Columns of Q are the basis polynomials at the samples,
// scaled so every column has Euclidean norm sqrt(M); H holds the recurrence
// coefficients (column j builds basis column j from its parent column).
template <typename Scalar>
struct ArnoldiBasisT {
  MatrixX<Scalar> Q;       // M x N
  MatrixX<Scalar> H;       // N x N, H(0,0) = 1 sentinel
  MultiIndexSet index_set;
  MatrixX<Scalar> points;  // M x d source samples
  Provenance provenance = Provenance::Custom;

  Index sample_count() const { return Q.rows(); }
  Index basis_size() const { return Q.cols(); }
};

// Everything needed to evaluate the fit anywhere: coefficients in the
// discrete orthogonal basis plus the recurrence data.
template <typename Scalar>
struct ApproximantT {
  VectorX<Scalar> d;
  MatrixX<Scalar> H;
  MultiIndexSet index_set;
};

using ArnoldiBasis = ArnoldiBasisT<double>;
using Approximant = ApproximantT<double>;

template <typename Scalar>
struct ArnoldiFitT {
  ArnoldiBasisT<Scalar> basis;
  ApproximantT<Scalar> approximant;
};

using ArnoldiFit = ArnoldiFitT<double>;

// Builds the orthogonal basis for the given column schedule. Classical
// Gram-Schmidt is applied twice per column; a vanishing normalization
// coefficient signals rank loss on the sample set.
template <typename Scalar>
ArnoldiBasisT<Scalar> arnoldi_basis(const MatrixX<Scalar>& points,
                                    const MultiIndexSet& index_set,
                                    Provenance provenance = Provenance::Custom) {
  const Index m = points.rows();
  const Index n_basis = index_set.size();
  if (points.cols() != index_set.dimension)
    throw std::invalid_argument("arnoldi_basis: point/index dimension mismatch");
  if (m <= n_basis)
    throw std::invalid_argument("arnoldi_basis: need more samples than basis functions");

  const Scalar sqrt_m = std::sqrt(static_cast<Scalar>(m));
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  ArnoldiBasisT<Scalar> basis;
  basis.Q = MatrixX<Scalar>::Zero(m, n_basis);
  basis.H = MatrixX<Scalar>::Zero(n_basis, n_basis);
  basis.index_set = index_set;
  basis.points = points;
  basis.provenance = provenance;

  basis.Q.col(0).setOnes();
  basis.H(0, 0) = Scalar(1);
  Scalar h_max = Scalar(1);

  VectorX<Scalar> v(m), s;
  for (Index l = 0; l + 1 < n_basis; ++l) {
    const ParentColumn parent = parent_column(index_set, l + 1);
    v = points.col(parent.coordinate).cwiseProduct(basis.Q.col(parent.k));
    for (int round = 0; round < 2; ++round) {
      s = basis.Q.leftCols(l + 1).transpose() * v / static_cast<Scalar>(m);
      v.noalias() -= basis.Q.leftCols(l + 1) * s;
      basis.H.col(l + 1).head(l + 1) += s;
    }
    h_max = std::max(h_max, basis.H.col(l + 1).head(l + 1).template lpNorm<Eigen::Infinity>());
    const Scalar norm = v.norm();
    const Scalar subdiag = norm / sqrt_m;
    const Scalar tol = sqrt_m * static_cast<Scalar>(n_basis) * eps * h_max;
    if (!(subdiag > tol))
      throw RankDeficiencyError(
          "arnoldi_basis: breakdown at column " + std::to_string(l + 1) + ", index " +
              to_string(index_set.indices[static_cast<size_t>(l + 1)]) +
              " (sample set does not resolve the polynomial space)",
          l + 1);
    basis.H(l + 1, l + 1) = subdiag;
    basis.Q.col(l + 1) = v * (sqrt_m / norm);
    h_max = std::max(h_max, subdiag);
  }
  return basis;
}

// Least-squares coefficients for the basis via Householder QR (the basis is
// near-orthonormal, so plain QR is both stable and cheap).
template <typename Scalar>
VectorX<Scalar> solve_coefficients(const ArnoldiBasisT<Scalar>& basis,
                                   const VectorX<Scalar>& values) {
  if (values.size() != basis.sample_count())
    throw std::invalid_argument("solve_coefficients: value count mismatch");
  return Eigen::HouseholderQR<MatrixX<Scalar>>(basis.Q).solve(values);
}

template <typename Scalar>
ArnoldiFitT<Scalar> fit(const MatrixX<Scalar>& points, const VectorX<Scalar>& values,
                        const MultiIndexSet& index_set,
                        Provenance provenance = Provenance::Custom) {
  ArnoldiFitT<Scalar> result;
  result.basis = arnoldi_basis(points, index_set, provenance);
  result.approximant =
      ApproximantT<Scalar>{solve_coefficients(result.basis, values), result.basis.H,
                           result.basis.index_set};
  return result;
}

// Basis functions evaluated at new points by replaying the recurrence.
template <typename Scalar>
MatrixX<Scalar> evaluate_basis(const MatrixX<Scalar>& H, const MultiIndexSet& index_set,
                               const MatrixX<Scalar>& eval_points) {
  const Index k_points = eval_points.rows();
  const Index n_basis = index_set.size();
  if (eval_points.cols() != index_set.dimension)
    throw std::invalid_argument("evaluate_basis: point dimension mismatch");
  MatrixX<Scalar> u(k_points, n_basis);
  u.col(0).setOnes();
  VectorX<Scalar> v(k_points);
  for (Index l = 0; l + 1 < n_basis; ++l) {
    const ParentColumn parent = parent_column(index_set, l + 1);
    v = eval_points.col(parent.coordinate).cwiseProduct(u.col(parent.k));
    v.noalias() -= u.leftCols(l + 1) * H.col(l + 1).head(l + 1);
    u.col(l + 1) = v / H(l + 1, l + 1);
  }
  return u;
}

// Evaluates the approximant; chunks the point list so the recurrence work
// space stays small for large meshes.
template <typename Scalar>
VectorX<Scalar> evaluate(const ApproximantT<Scalar>& approx,
                         const MatrixX<Scalar>& eval_points,
                         Index chunk = Index(32768)) {
  const Index k_points = eval_points.rows();
  VectorX<Scalar> out(k_points);
  for (Index start = 0; start < k_points; start += chunk) {
    const Index rows = std::min(chunk, k_points - start);
    out.segment(start, rows) =
        evaluate_basis<Scalar>(approx.H, approx.index_set,
                               eval_points.middleRows(start, rows)) *
        approx.d;
  }
  return out;
}

// --- SampleSet front ends (double precision) ---

ArnoldiFit inline fit_mv(const SampleSet& samples, const Vector& values,
                         const MultiIndexSet& index_set) {
  ArnoldiFit result;
  result.basis = arnoldi_basis<double>(samples.points, index_set, samples.provenance);
  result.approximant = Approximant{solve_coefficients(result.basis, values),
                                   result.basis.H, result.basis.index_set};
  return result;
}

ArnoldiFit inline fit_1d(const SampleSet& samples, const Vector& values, int degree) {
  if (samples.dimension() != 1)
    throw std::invalid_argument("fit_1d: samples must be one-dimensional");
  return fit_mv(samples, values, total_degree_indices(1, degree));
}

inline Vector eval_mv(const Approximant& approx, const Matrix& eval_points) {
  return evaluate<double>(approx, eval_points);
}

inline Vector eval_1d(const Approximant& approx, const Vector& eval_points) {
  Matrix pts(eval_points.size(), 1);
  pts.col(0) = eval_points;
  return evaluate<double>(approx, pts);
}

}  // namespace polyva
