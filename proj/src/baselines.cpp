#include "polyva/baselines.hpp"

#include <cmath>

namespace polyva {

Matrix AffineMap::apply(const Matrix& points) const {
  Matrix out = points;
  for (Index r = 0; r < points.cols(); ++r)
    out.col(r) = (points.col(r).array() - shift(r)) * scale(r);
  return out;
}

AffineMap AffineMap::identity(int dimension) {
  AffineMap map;
  map.shift = Vector::Zero(dimension);
  map.scale = Vector::Ones(dimension);
  return map;
}

AffineMap AffineMap::to_unit_box(const Matrix& points) {
  AffineMap map;
  const int d = static_cast<int>(points.cols());
  map.shift = Vector::Zero(d);
  map.scale = Vector::Ones(d);
  for (Index r = 0; r < d; ++r) {
    const double lo = points.col(r).minCoeff();
    const double hi = points.col(r).maxCoeff();
    map.shift(r) = 0.5 * (lo + hi);
    if (hi > lo) map.scale(r) = 2.0 / (hi - lo);
  }
  return map;
}

Matrix monomial_matrix(const Matrix& mapped_points, const MultiIndexSet& index_set) {
  const Index m = mapped_points.rows();
  const Index n = index_set.size();
  Matrix a(m, n);
  a.col(0).setOnes();
  for (Index j = 1; j < n; ++j) {
    const ParentColumn parent = parent_column(index_set, j);
    a.col(j) = mapped_points.col(parent.coordinate).cwiseProduct(a.col(parent.k));
  }
  return a;
}

MonomialApproximant vandermonde_fit(const SampleSet& samples, const Vector& values,
                                    const MultiIndexSet& index_set,
                                    bool rescale_to_unit_box) {
  if (samples.count() < index_set.size())
    throw std::invalid_argument("vandermonde_fit: need at least N samples");
  if (values.size() != samples.count())
    throw std::invalid_argument("vandermonde_fit: value count mismatch");

  MonomialApproximant approx;
  approx.index_set = index_set;
  approx.map = rescale_to_unit_box ? AffineMap::to_unit_box(samples.points)
                                   : AffineMap::identity(samples.dimension());
  const Matrix a = monomial_matrix(approx.map.apply(samples.points), index_set);

  Eigen::BDCSVD<Matrix> svd(a);
  const auto& sigma = svd.singularValues();
  const double smin = sigma(sigma.size() - 1);
  approx.kappa2 = smin > 0.0 ? sigma(0) / smin : std::numeric_limits<double>::infinity();

  approx.c = Eigen::HouseholderQR<Matrix>(a).solve(values);
  if (!approx.c.allFinite())
    approx.c = Eigen::CompleteOrthogonalDecomposition<Matrix>(a).solve(values);
  return approx;
}

Vector eval_monomial(const MonomialApproximant& approx, const Matrix& eval_points) {
  const Index k = eval_points.rows();
  const Index chunk = 32768;
  Vector out(k);
  for (Index start = 0; start < k; start += chunk) {
    const Index rows = std::min(chunk, k - start);
    out.segment(start, rows) =
        monomial_matrix(approx.map.apply(eval_points.middleRows(start, rows)),
                        approx.index_set) *
        approx.c;
  }
  return out;
}

BoundingTensorFit bounding_tensor_fit(const Domain& domain,
                                      const std::function<double(const Vector&)>& f,
                                      const MultiIndexSet& index_set, Index sample_count,
                                      std::uint64_t seed) {
  const Domain box_domain{domain.bounding_box()};
  BoundingTensorFit result;
  result.box_samples = rejection_sample(box_domain, sample_count, seed);

  Vector values(result.box_samples.count());
  Index inside = 0;
  for (Index i = 0; i < result.box_samples.count(); ++i) {
    const Vector x = result.box_samples.points.row(i).transpose();
    values(i) = f(x);
    if (indicator(domain, x)) ++inside;
  }
  result.in_domain_fraction =
      static_cast<double>(inside) / static_cast<double>(result.box_samples.count());
  result.fit = fit_mv(result.box_samples, values, index_set);
  return result;
}

}  // namespace polyva
