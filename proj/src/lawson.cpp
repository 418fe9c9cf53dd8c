#include "polyva/lawson.hpp"

#include <cmath>

namespace polyva {

LawsonResult lawson_refine(const ArnoldiBasis& basis, const Vector& values,
                           int iterations) {
  if (iterations < 0) throw std::invalid_argument("lawson_refine: iterations must be >= 0");
  if (values.size() != basis.sample_count())
    throw std::invalid_argument("lawson_refine: value count mismatch");

  const Index m = basis.sample_count();
  LawsonState state;
  state.w = Vector::Constant(m, 1.0 / static_cast<double>(m));
  state.d = solve_coefficients(basis, values);

  Vector residual = values - basis.Q * state.d;
  state.history.push_back(residual.lpNorm<Eigen::Infinity>());

  // Residuals at the roundoff floor mean the data lies in the space; there
  // is nothing left for the reweighting to shape.
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + values.lpNorm<Eigen::Infinity>());

  for (int it = 0; it < iterations; ++it) {
    if (residual.lpNorm<Eigen::Infinity>() <= floor) break;
    const double total = state.w.dot(residual.cwiseAbs());
    if (total == 0.0) break;
    state.w = state.w.cwiseProduct(residual.cwiseAbs()) / total;

    const Vector sqrt_w = state.w.cwiseSqrt();
    state.d = Eigen::HouseholderQR<Matrix>(sqrt_w.asDiagonal() * basis.Q)
                  .solve(sqrt_w.cwiseProduct(values));
    residual = values - basis.Q * state.d;
    state.history.push_back(residual.lpNorm<Eigen::Infinity>());
  }

  LawsonResult result;
  result.approximant = Approximant{state.d, basis.H, basis.index_set};
  result.state = std::move(state);
  return result;
}

}  // namespace polyva
