#include "snsr/filter/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace snsr {

ChebyshevFilter::ChebyshevFilter(Vector theta, double lambda_max)
    : theta_(std::move(theta)), lambda_max_(lambda_max) {
  require(theta_.size() >= 1, ErrorCode::invalid_argument, "Chebyshev filter needs order >= 0");
  require(theta_.allFinite(), ErrorCode::invalid_argument, "Chebyshev coefficients must be finite");
  require(std::isfinite(lambda_max_) && lambda_max_ > 0.0, ErrorCode::invalid_argument,
          "Chebyshev filter lambda_max must be positive");
}

double chebyshev_series(const Vector& theta, double z) {
  double t_prev = 1.0;
  double acc = theta[0];
  if (theta.size() == 1) return acc;
  double t_cur = z;
  acc += theta[1] * t_cur;
  for (Eigen::Index k = 2; k < theta.size(); ++k) {
    const double t_next = 2.0 * z * t_cur - t_prev;
    acc += theta[k] * t_next;
    t_prev = t_cur;
    t_cur = t_next;
  }
  return acc;
}

double ChebyshevFilter::response(double lambda) const {
  return chebyshev_series(theta_, 2.0 * lambda / lambda_max_ - 1.0);
}

ResponseFn ChebyshevFilter::as_function() const {
  return [f = *this](double lambda) { return f.response(lambda); };
}

ChebyshevFilter ChebyshevFilter::resized(int order) const {
  require(order >= 0, ErrorCode::invalid_argument, "filter order must be >= 0");
  Vector theta = Vector::Zero(order + 1);
  const Eigen::Index keep = std::min<Eigen::Index>(theta_.size(), order + 1);
  theta.head(keep) = theta_.head(keep);
  return {std::move(theta), lambda_max_};
}

namespace {

void check_scaling(const ChebyshevFilter& f, const ScaledLaplacian& lt) {
  const double rel = std::abs(f.lambda_max() - lt.lambda_max()) / lt.lambda_max();
  if (rel > kLambdaMaxMatchTol) {
    throw Error(ErrorCode::lambda_mismatch,
                "filter lambda_max " + std::to_string(f.lambda_max()) +
                    " does not match operator lambda_max " + std::to_string(lt.lambda_max()));
  }
}

}  // namespace

RecurrenceTrace chebyshev_trace(const ScaledLaplacian& lt, const Vector& x, int order) {
  require_same_size(x.size(), lt.size(), "chebyshev_trace");
  require(order >= 0, ErrorCode::invalid_argument, "order must be >= 0");
  RecurrenceTrace trace;
  trace.basis_vectors.reserve(static_cast<std::size_t>(order) + 1);
  trace.basis_vectors.push_back(x);
  if (order == 0) return trace;
  trace.basis_vectors.push_back(lt.matrix() * x);
  Vector tmp;
  for (int k = 1; k < order; ++k) {
    lt.matrix().multiply(trace.basis_vectors[k], tmp);
    trace.basis_vectors.push_back(2.0 * tmp - trace.basis_vectors[k - 1]);
  }
  return trace;
}

FilterOutput cheb_apply(const ChebyshevFilter& f, const ScaledLaplacian& lt, const Vector& x,
                        bool keep_trace) {
  require_same_size(x.size(), lt.size(), "cheb_apply");
  check_scaling(f, lt);
  const Vector& theta = f.theta();
  const int order = f.order();

  if (keep_trace) {
    RecurrenceTrace trace = chebyshev_trace(lt, x, order);
    Vector y = Vector::Zero(x.size());
    for (int k = 0; k <= order; ++k) y += theta[k] * trace.basis_vectors[k];
    return {std::move(y), std::move(trace)};
  }

  Vector y = theta[0] * x;
  if (order == 0) return {std::move(y), std::nullopt};
  Vector prev = x;
  Vector cur = lt.matrix() * x;
  y += theta[1] * cur;
  Vector next;
  for (int k = 1; k < order; ++k) {
    lt.matrix().multiply(cur, next);
    next *= 2.0;
    next -= prev;
    y += theta[k + 1] * next;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return {std::move(y), std::nullopt};
}

Vector dense_filter_apply(const SpectralBasis& basis, const ResponseFn& h, const Vector& x) {
  require_same_size(x.size(), basis.size(), "dense_filter_apply");
  const Vector& lambda = basis.eigenvalues();
  Vector response(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) response[i] = h(lambda[i]);
  return basis.filter(response, x);
}

Vector dense_filter_apply(const SpectralBasis& basis, const AnalyticResponse& r, const Vector& x) {
  return dense_filter_apply(basis, r.as_function(), x);
}

Vector dense_filter_apply(const SpectralBasis& basis, const ChebyshevFilter& f, const Vector& x) {
  return dense_filter_apply(basis, f.as_function(), x);
}

int default_quadrature_nodes(int order) { return std::max(64, 4 * (order + 1)); }

ChebyshevFilter fit_chebyshev(const ResponseFn& h, int order, double lambda_max,
                              int quadrature_nodes) {
  require(order >= 0, ErrorCode::invalid_argument, "fit order must be >= 0");
  require(std::isfinite(lambda_max) && lambda_max > 0.0, ErrorCode::invalid_argument,
          "fit lambda_max must be positive");
  const int m = quadrature_nodes == 0 ? default_quadrature_nodes(order) : quadrature_nodes;
  require(m >= order + 1, ErrorCode::invalid_argument,
          "quadrature nodes (" + std::to_string(m) + ") must be >= order + 1");

  Vector theta = Vector::Zero(order + 1);
  for (int j = 0; j < m; ++j) {
    const double angle = std::numbers::pi * (j + 0.5) / m;
    const double z = std::cos(angle);
    const double value = h(lambda_max * (z + 1.0) / 2.0);
    // T_k(cos a) = cos(k a)
    for (int k = 0; k <= order; ++k) theta[k] += value * std::cos(k * angle);
  }
  theta *= 2.0 / m;
  theta[0] *= 0.5;
  return {std::move(theta), lambda_max};
}

ChebyshevFilter fit_chebyshev(const AnalyticResponse& r, int order, double lambda_max,
                              int quadrature_nodes) {
  return fit_chebyshev(r.as_function(), order, lambda_max, quadrature_nodes);
}

double max_grid_error(const ChebyshevFilter& f, const ResponseFn& h, int points) {
  require(points >= 2, ErrorCode::invalid_argument, "grid needs at least two points");
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double lambda = f.lambda_max() * i / (points - 1);
    worst = std::max(worst, std::abs(f.response(lambda) - h(lambda)));
  }
  return worst;
}

}  // namespace snsr
