#pragma once

#include "polyva/arnoldi.hpp"

namespace polyva {

struct LawsonState {
  Vector w;                    // final weights, a probability vector
  Vector d;                    // final coefficients
  std::vector<double> history; // sample-set sup error per iteration (0 = plain fit)
};

struct LawsonResult {
  Approximant approximant;
  LawsonState state;
};

// Iteratively reweighted least squares on the fixed discrete orthogonal
// basis. Iteration 0 is the plain fit; each later iteration solves the
// diagonally weighted problem and updates w <- w|r| / sum(w|r|), pushing the
// residual toward equioscillation. Weights that reach zero stay zero and
// their rows drop out of the solve.
LawsonResult lawson_refine(const ArnoldiBasis& basis, const Vector& values,
                           int iterations);

}  // namespace polyva
