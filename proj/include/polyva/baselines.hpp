#pragma once

#include <cstdint>
#include <functional>

#include "polyva/arnoldi.hpp"
#include "polyva/geometry.hpp"
#include "polyva/indexing.hpp"

namespace polyva {

// Per-axis affine map y = scale * (x - shift) used to place samples in
// [-1,1]^d before forming monomials. Identity when rescaling is disabled.
struct AffineMap {
  Vector shift;
  Vector scale;

  Matrix apply(const Matrix& points) const;
  static AffineMap identity(int dimension);
  static AffineMap to_unit_box(const Matrix& points);
};

struct MonomialApproximant {
  Vector c;  // coefficients w.r.t. the (mapped) monomial basis
  MultiIndexSet index_set;
  AffineMap map;
  double kappa2 = 0.0;  // condition number of the design matrix
};

// Monomial design matrix A(i,j) = prod_r y_{i,r}^{alpha_j,r}, built column by
// column through the index-set parent chain.
Matrix monomial_matrix(const Matrix& mapped_points, const MultiIndexSet& index_set);

// Plain Vandermonde least squares; the ill-conditioning of A is the point of
// this baseline. Solved QR-style without rank truncation to mirror classic
// polyfit behavior; falls back to a minimum-norm solve if that produces
// non-finite coefficients.
MonomialApproximant vandermonde_fit(const SampleSet& samples, const Vector& values,
                                    const MultiIndexSet& index_set,
                                    bool rescale_to_unit_box = true);

Vector eval_monomial(const MonomialApproximant& approx, const Matrix& eval_points);

struct BoundingTensorFit {
  ArnoldiFit fit;            // basis lives on the bounding box
  SampleSet box_samples;     // all sample points, drawn from the box
  double in_domain_fraction = 0.0;
};

// Frame-style baseline: sample the bounding box instead of the domain, build
// the orthogonal basis there, and fit the target's formula on every box
// sample. Accuracy is meant to be judged restricted to the domain.
BoundingTensorFit bounding_tensor_fit(const Domain& domain,
                                      const std::function<double(const Vector&)>& f,
                                      const MultiIndexSet& index_set, Index sample_count,
                                      std::uint64_t seed);

}  // namespace polyva
