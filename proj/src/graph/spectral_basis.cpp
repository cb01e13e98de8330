#include "snsr/graph/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace snsr {

namespace {

constexpr double kSignTolerance = 1e-10;

void fix_sign(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignTolerance) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

bool lex_greater(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kSignTolerance) return a[i] > b[i];
  }
  return false;
}

}  // namespace

BeliefVector::BeliefVector(Vector values, Domain domain)
    : values_(std::move(values)), domain_(domain) {
  require(values_.allFinite(), ErrorCode::invalid_argument,
          "belief vector contains non-finite entries");
}

SpectralBasis::SpectralBasis(Vector eigenvalues, Matrix eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
  require(eigenvectors_.rows() == eigenvectors_.cols() &&
              eigenvectors_.cols() == eigenvalues_.size() && eigenvalues_.size() > 0,
          ErrorCode::dimension_mismatch, "spectral basis: inconsistent eigenpair dimensions");
}

Vector SpectralBasis::forward(const Vector& x) const {
  require_same_size(x.size(), eigenvalues_.size(), "gft forward");
  return eigenvectors_.transpose() * x;
}

Vector SpectralBasis::inverse(const Vector& xhat) const {
  require_same_size(xhat.size(), eigenvalues_.size(), "gft inverse");
  return eigenvectors_ * xhat;
}

Vector SpectralBasis::filter(const Vector& response, const Vector& x) const {
  require_same_size(response.size(), eigenvalues_.size(), "spectral response");
  return inverse(response.cwiseProduct(forward(x)));
}

SpectralBasis eigendecompose_dense(const Matrix& symmetric, Index cap) {
  const Index n = static_cast<Index>(symmetric.rows());
  require(symmetric.rows() == symmetric.cols(), ErrorCode::dimension_mismatch,
          "eigendecompose: matrix must be square");
  if (n > cap) {
    throw Error(ErrorCode::oracle_unavailable,
                "oracle unavailable at this size: N=" + std::to_string(n) +
                    " exceeds the dense cap " + std::to_string(cap));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  require(solver.info() == Eigen::Success, ErrorCode::not_converged,
          "eigendecompose: dense eigensolver failed");
  Vector values = solver.eigenvalues();
  Matrix vectors = solver.eigenvectors();
  for (Index k = 0; k < n; ++k) fix_sign(vectors.col(k));

  // Order within clusters of tied eigenvalues.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double tie_tol = 1e-9 * scale;
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && values[end] - values[end - 1] <= tie_tol) ++end;
    if (end - start > 1) {
      std::stable_sort(order.begin() + start, order.begin() + end, [&](Index a, Index b) {
        return lex_greater(vectors.col(a), vectors.col(b));
      });
    }
    start = end;
  }
  Vector sorted_values(n);
  Matrix sorted_vectors(n, n);
  for (Index k = 0; k < n; ++k) {
    // Values stay ascending; only vectors move within a tie cluster.
    sorted_values[k] = values[k];
    sorted_vectors.col(k) = vectors.col(order[k]);
  }
  return SpectralBasis(std::move(sorted_values), std::move(sorted_vectors));
}

SpectralBasis eigendecompose(const Laplacian& l, Index cap) {
  if (l.size() > cap) {
    throw Error(ErrorCode::oracle_unavailable,
                "oracle unavailable at this size: N=" + std::to_string(l.size()) +
                    " exceeds the dense cap " + std::to_string(cap));
  }
  return eigendecompose_dense(l.matrix().to_dense(), cap);
}

BeliefVector gft(const SpectralBasis& basis, const BeliefVector& x, GftDirection direction) {
  if (direction == GftDirection::forward) {
    require(x.domain() == Domain::vertex, ErrorCode::domain_mismatch,
            "gft forward expects a vertex-domain signal");
    return BeliefVector(basis.forward(x.values()), Domain::spectral);
  }
  require(x.domain() == Domain::spectral, ErrorCode::domain_mismatch,
          "gft inverse expects a spectral-domain signal");
  return BeliefVector(basis.inverse(x.values()), Domain::vertex);
}

}  // namespace snsr
