#include "snsr/filter/rational.hpp"

#include <cmath>

namespace snsr {

RationalSolve rational_solve(double tau, const Laplacian& l, const Vector& x, double tol,
                             int max_iters) {
  require(std::isfinite(tau) && tau > 0.0, ErrorCode::invalid_argument,
          "rational_apply: tau must be positive");
  require(tol > 0.0, ErrorCode::invalid_argument, "rational_apply: tol must be positive");
  require_same_size(x.size(), l.size(), "rational_apply");
  const int cap = max_iters > 0 ? max_iters : 10 * static_cast<int>(l.size());

  RationalSolve out;
  out.y = Vector::Zero(x.size());
  const double rhs_norm = x.norm();
  if (rhs_norm == 0.0) return out;

  auto apply = [&](const Vector& v, Vector& av) {
    l.matrix().multiply(v, av);
    av *= tau;
    av += v;
  };

  Vector r = x;
  Vector p = r;
  Vector ap;
  double rr = r.squaredNorm();
  for (int it = 1; it <= cap; ++it) {
    apply(p, ap);
    const double alpha = rr / p.dot(ap);
    out.y += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    out.iterations = it;
    out.relative_residual = std::sqrt(rr_next) / rhs_norm;
    if (out.relative_residual <= tol) return out;
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  // Recurrence residuals drift; confirm with the true residual before failing.
  apply(out.y, ap);
  out.relative_residual = (x - ap).norm() / rhs_norm;
  if (out.relative_residual <= tol) return out;
  throw Error(ErrorCode::not_converged,
              "rational_apply: conjugate gradients did not converge after " +
                  std::to_string(cap) + " iterations (relative residual " +
                  std::to_string(out.relative_residual) + ")");
}

}  // namespace snsr
