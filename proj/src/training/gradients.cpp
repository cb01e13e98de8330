#include "snsr/training/gradients.hpp"

namespace snsr {

Vector grad_theta(const Vector& dLdy, const RecurrenceTrace& trace) {
  require(!trace.basis_vectors.empty(), ErrorCode::invalid_argument, "grad_theta: empty trace");
  Vector g(trace.order() + 1);
  for (int k = 0; k <= trace.order(); ++k) {
    require_same_size(dLdy.size(), trace.basis_vectors[k].size(), "grad_theta");
    g[k] = dLdy.dot(trace.basis_vectors[k]);
  }
  return g;
}

Matrix grad_scaled_laplacian(const Vector& dLdy, const RecurrenceTrace& trace,
                             const ChebyshevFilter& f, const ScaledLaplacian& lt) {
  require(!trace.basis_vectors.empty(), ErrorCode::invalid_argument,
          "grad_scaled_laplacian: missing recurrence trace");
  require(trace.order() == f.order(), ErrorCode::dimension_mismatch,
          "grad_scaled_laplacian: trace order does not match the filter");
  require_same_size(dLdy.size(), lt.size(), "grad_scaled_laplacian");
  const Index n = lt.size();
  const int order = f.order();
  Matrix grad = Matrix::Zero(n, n);
  if (order == 0) return grad;

  // adjoint[k] = dL/db_k, seeded by y = sum_k theta_k b_k.
  std::vector<Vector> adjoint(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) adjoint[k] = f.theta()[k] * dLdy;

  const auto& b = trace.basis_vectors;
  for (int k = order; k >= 2; --k) {
    // b_k = 2 L~ b_{k-1} - b_{k-2}
    grad.noalias() += 2.0 * adjoint[k] * b[k - 1].transpose();
    adjoint[k - 1] += 2.0 * (lt.matrix() * adjoint[k]);
    adjoint[k - 2] -= adjoint[k];
  }
  // b_1 = L~ b_0
  grad.noalias() += adjoint[1] * b[0].transpose();
  return 0.5 * (grad + grad.transpose());
}

Matrix project_laplacian_dense(const Matrix& candidate) {
  require(candidate.rows() == candidate.cols(), ErrorCode::dimension_mismatch,
          "project_laplacian: matrix must be square");
  const Eigen::Index n = candidate.rows();
  Matrix out = 0.5 * (candidate + candidate.transpose());
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      out(i, j) = std::min(out(i, j), 0.0);
      row += out(i, j);
    }
    out(i, i) = -row;
  }
  return out;
}

Laplacian project_laplacian(const Matrix& candidate) {
  return laplacian_from_dense(project_laplacian_dense(candidate), LaplacianVariant::combinatorial);
}

double rule_consistency_penalty(const SpectralBasis& basis, const RuleConsistencyTarget& target) {
  require_same_size(target.target_spectrum.size(), basis.size(), "rule_consistency_penalty");
  return (basis.eigenvalues() - target.target_spectrum).squaredNorm();
}

Matrix rule_consistency_gradient(const SpectralBasis& basis, const RuleConsistencyTarget& target) {
  require_same_size(target.target_spectrum.size(), basis.size(), "rule_consistency_gradient");
  const Vector diag = 2.0 * (basis.eigenvalues() - target.target_spectrum);
  const Matrix& u = basis.eigenvectors();
  return u * diag.asDiagonal() * u.transpose();
}

namespace {

Vector disallowed_mask(const SpectralBasis& basis, const BandPartition& partition,
                       const BandSet& allowed) {
  const std::vector<int> bands = partition.assign(basis);
  Vector mask(basis.size());
  for (Index i = 0; i < basis.size(); ++i) mask[i] = allowed.count(bands[i]) ? 0.0 : 1.0;
  return mask;
}

}  // namespace

double proof_guided_penalty(const Vector& y, const SpectralBasis& basis,
                            const BandPartition& partition, const BandSet& allowed) {
  const Vector yhat = basis.forward(y);
  const double total = yhat.squaredNorm();
  if (total == 0.0) return 0.0;
  const Vector mask = disallowed_mask(basis, partition, allowed);
  return mask.dot(yhat.cwiseAbs2()) / total;
}

Vector proof_guided_penalty_gradient(const Vector& y, const SpectralBasis& basis,
                                     const BandPartition& partition, const BandSet& allowed) {
  const Vector yhat = basis.forward(y);
  const double total = yhat.squaredNorm();
  if (total == 0.0) return Vector::Zero(y.size());
  const Vector mask = disallowed_mask(basis, partition, allowed);
  const double penalty = mask.dot(yhat.cwiseAbs2()) / total;
  const Vector dhat = (2.0 / total) * yhat.cwiseProduct((mask.array() - penalty).matrix());
  return basis.inverse(dhat);
}

}  // namespace snsr
