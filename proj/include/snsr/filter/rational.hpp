#pragma once

#include "snsr/graph/laplacian.hpp"

namespace snsr {

struct RationalSolve {
  Vector y;
  int iterations = 0;
  double relative_residual = 0.0;
};

// Solves (I + tau L) y = x by unpreconditioned conjugate gradients, i.e. the
// exact diffusion response 1 / (1 + tau lambda) without a polynomial fit.
// max_iters <= 0 selects 10 N. Throws ErrorCode::not_converged with the final
// residual when the tolerance is not reached.
RationalSolve rational_solve(double tau, const Laplacian& l, const Vector& x, double tol = 1e-10,
                             int max_iters = 0);

inline Vector rational_apply(double tau, const Laplacian& l, const Vector& x, double tol = 1e-10,
                             int max_iters = 0) {
  return rational_solve(tau, l, x, tol, max_iters).y;
}

}  // namespace snsr
