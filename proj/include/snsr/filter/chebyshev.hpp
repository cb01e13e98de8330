#pragma once

#include <optional>
#include <span>
#include <vector>

#include "snsr/filter/response.hpp"
#include "snsr/graph/laplacian.hpp"
#include "snsr/graph/spectral_basis.hpp"

namespace snsr {

// Truncated Chebyshev series h(lambda) = sum_k theta_k T_k(2 lambda / lambda_max - 1).
// lambda_max is the scaling the coefficients were fitted against; applying the
// filter through a ScaledLaplacian with a different scaling is rejected.
class ChebyshevFilter {
 public:
  ChebyshevFilter(Vector theta, double lambda_max);

  const Vector& theta() const { return theta_; }
  double lambda_max() const { return lambda_max_; }
  int order() const { return static_cast<int>(theta_.size()) - 1; }

  // Response at an unscaled eigenvalue.
  double response(double lambda) const;
  ResponseFn as_function() const;

  ChebyshevFilter with_theta(Vector theta) const { return {std::move(theta), lambda_max_}; }
  ChebyshevFilter with_lambda_max(double lambda_max) const { return {theta_, lambda_max}; }
  // Zero-padded or truncated to `order`.
  ChebyshevFilter resized(int order) const;

 private:
  Vector theta_;
  double lambda_max_;
};

// sum_k theta_k T_k(z), evaluated by the three-term recurrence.
double chebyshev_series(const Vector& theta, double z);

// b_0 = x, b_1 = L~ x, b_{k+1} = 2 L~ b_k - b_{k-1}
struct RecurrenceTrace {
  std::vector<Vector> basis_vectors;

  int order() const { return static_cast<int>(basis_vectors.size()) - 1; }
};

struct FilterOutput {
  Vector y;
  std::optional<RecurrenceTrace> trace;
};

// Relative tolerance when comparing a filter's lambda_max with the operator's.
inline constexpr double kLambdaMaxMatchTol = 1e-9;

// y = sum_k theta_k T_k(L~) x via sparse products. Without a trace only three
// rolling vectors are live.
FilterOutput cheb_apply(const ChebyshevFilter& f, const ScaledLaplacian& lt, const Vector& x,
                        bool keep_trace = false);

// The b_0..b_order sequence on its own (shared by gradient code and mixtures).
RecurrenceTrace chebyshev_trace(const ScaledLaplacian& lt, const Vector& x, int order);

// U diag(h(lambda_i)) U^T x with h evaluated exactly at every eigenvalue.
Vector dense_filter_apply(const SpectralBasis& basis, const ResponseFn& h, const Vector& x);
Vector dense_filter_apply(const SpectralBasis& basis, const AnalyticResponse& r, const Vector& x);
Vector dense_filter_apply(const SpectralBasis& basis, const ChebyshevFilter& f, const Vector& x);

// Default quadrature size: max(64, 4 (K + 1)).
int default_quadrature_nodes(int order);

// Chebyshev-Gauss projection of h(lambda(z)), lambda(z) = lambda_max (z + 1) / 2,
// onto T_0..T_order using `quadrature_nodes` nodes (0 selects the default).
ChebyshevFilter fit_chebyshev(const ResponseFn& h, int order, double lambda_max,
                              int quadrature_nodes = 0);
ChebyshevFilter fit_chebyshev(const AnalyticResponse& r, int order, double lambda_max,
                              int quadrature_nodes = 0);

// max |f(lambda) - h(lambda)| over `points` uniform samples of [0, lambda_max].
double max_grid_error(const ChebyshevFilter& f, const ResponseFn& h, int points = 1000);

}  // namespace snsr
