#pragma once

#include "polyva/common.hpp"

namespace polyva {

// Standard Legendre polynomials P_0..P_{count-1} at the given points via the
// three-term recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
template <typename Scalar>
MatrixX<Scalar> legendre_matrix(const VectorX<Scalar>& x, Index count) {
  MatrixX<Scalar> p(x.size(), count);
  if (count >= 1) p.col(0).setOnes();
  if (count >= 2) p.col(1) = x;
  for (Index k = 1; k + 1 < count; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    p.col(k + 1) = ((Scalar(2) * kk + Scalar(1)) * x.cwiseProduct(p.col(k)) -
                    kk * p.col(k - 1)) /
                   (kk + Scalar(1));
  }
  return p;
}

}  // namespace polyva
