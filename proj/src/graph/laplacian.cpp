#include "snsr/graph/laplacian.hpp"

#include <cmath>
#include <random>

namespace snsr {

std::string to_string(LaplacianVariant v) {
  switch (v) {
    case LaplacianVariant::combinatorial: return "combinatorial";
    case LaplacianVariant::normalized: return "normalized";
    case LaplacianVariant::signed_laplacian: return "signed";
  }
  return "combinatorial";
}

LaplacianVariant laplacian_variant_from_string(const std::string& s) {
  if (s == "combinatorial") return LaplacianVariant::combinatorial;
  if (s == "normalized") return LaplacianVariant::normalized;
  if (s == "signed") return LaplacianVariant::signed_laplacian;
  throw Error(ErrorCode::invalid_argument, "unknown Laplacian variant: " + s);
}

Laplacian::Laplacian(SymmetricSparse matrix, LaplacianVariant variant, Vector degree)
    : matrix_(std::move(matrix)), variant_(variant), degree_(std::move(degree)) {
  require_same_size(degree_.size(), matrix_.size(), "Laplacian degree vector");
}

Laplacian build_laplacian(const Graph& g, LaplacianVariant variant) {
  if (variant != LaplacianVariant::signed_laplacian) {
    require(!g.has_negative_weights(), ErrorCode::invalid_argument,
            "graph has negative weights; use the signed Laplacian variant");
  }
  const Index n = g.node_count();
  Vector degree = Vector::Zero(n);
  for (const Edge& e : g.edges()) {
    const double w = variant == LaplacianVariant::signed_laplacian ? std::abs(e.w) : e.w;
    degree[e.i] += w;
    degree[e.j] += w;
  }

  std::vector<SymmetricEntry> entries;
  entries.reserve(g.edge_count() + static_cast<std::size_t>(n));
  if (variant == LaplacianVariant::normalized) {
    Vector inv_sqrt(n);
    for (Index i = 0; i < n; ++i) {
      inv_sqrt[i] = degree[i] > 0.0 ? 1.0 / std::sqrt(degree[i]) : 0.0;
      entries.push_back({i, i, degree[i] > 0.0 ? 1.0 : 0.0});
    }
    for (const Edge& e : g.edges()) {
      entries.push_back({e.i, e.j, -e.w * inv_sqrt[e.i] * inv_sqrt[e.j]});
    }
  } else {
    for (Index i = 0; i < n; ++i) entries.push_back({i, i, degree[i]});
    for (const Edge& e : g.edges()) entries.push_back({e.i, e.j, -e.w});
  }
  return Laplacian(SymmetricSparse::from_entries(n, std::move(entries)), variant,
                   std::move(degree));
}

Laplacian laplacian_from_dense(const Matrix& dense, LaplacianVariant variant) {
  SymmetricSparse m = SymmetricSparse::from_dense(dense);
  Vector degree = dense.diagonal();
  return Laplacian(std::move(m), variant, std::move(degree));
}

double gershgorin_bound(const SymmetricSparse& m) {
  const Vector radius = m.row_abs_sums_offdiag();
  const Vector diag = m.diagonal();
  double bound = 0.0;
  for (Index i = 0; i < m.size(); ++i) bound = std::max(bound, std::abs(diag[i]) + radius[i]);
  return bound;
}

LambdaMaxEstimate estimate_lambda_max(const Laplacian& l, const PowerMethodOptions& options) {
  require(l.size() >= 1, ErrorCode::invalid_argument, "estimate_lambda_max: empty operator");
  require(options.max_iters >= 1, ErrorCode::invalid_argument, "max_iters must be >= 1");
  require(options.tol > 0.0, ErrorCode::invalid_argument, "tol must be positive");

  LambdaMaxEstimate result;
  if (l.matrix().all_zero()) {
    result.value = 1.0;
    result.degenerate = true;
    return result;
  }

  const Index n = l.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> noise(-0.5, 0.5);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 1.0 + noise(rng);
  v.normalize();

  Vector w;
  double previous = 0.0;
  for (int it = 1; it <= options.max_iters; ++it) {
    l.matrix().multiply(v, w);
    const double rayleigh = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) {
      // Start vector fell into the null space; only happens for a zero operator.
      result.value = 1.0;
      result.degenerate = true;
      result.iterations = it;
      return result;
    }
    v = w / norm;
    if (it > 1 && std::abs(rayleigh - previous) < options.tol * std::max(1.0, std::abs(rayleigh))) {
      result.value = rayleigh * options.margin;
      result.iterations = it;
      return result;
    }
    previous = rayleigh;
  }
  result.value = gershgorin_bound(l.matrix());
  result.converged = false;
  result.iterations = options.max_iters;
  return result;
}

ScaledLaplacian scale_laplacian(const Laplacian& l, double lambda_max) {
  require(lambda_max > 0.0 && std::isfinite(lambda_max), ErrorCode::invalid_argument,
          "scale_laplacian: lambda_max must be positive");
  return ScaledLaplacian(l.matrix().scaled_shift(2.0 / lambda_max, -1.0), lambda_max);
}

}  // namespace snsr
