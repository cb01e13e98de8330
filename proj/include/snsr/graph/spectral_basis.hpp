#pragma once

#include "snsr/common.hpp"
#include "snsr/graph/laplacian.hpp"

namespace snsr {

enum class Domain { vertex, spectral };

// Node signal tagged with the domain it lives in. Entries must be finite.
class BeliefVector {
 public:
  explicit BeliefVector(Vector values, Domain domain = Domain::vertex);

  const Vector& values() const { return values_; }
  Domain domain() const { return domain_; }
  Eigen::Index size() const { return values_.size(); }

 private:
  Vector values_;
  Domain domain_;
};

inline constexpr Index kDefaultOracleCap = 2048;

// Dense eigenpairs (U, lambda) of a symmetric operator: eigenvalues ascending,
// each eigenvector's first non-negligible entry positive, and eigenvectors of
// (numerically) tied eigenvalues ordered lexicographically descending.
class SpectralBasis {
 public:
  SpectralBasis(Vector eigenvalues, Matrix eigenvectors);

  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  Index size() const { return static_cast<Index>(eigenvalues_.size()); }
  double max_eigenvalue() const { return eigenvalues_[eigenvalues_.size() - 1]; }

  Vector forward(const Vector& x) const;  // U^T x
  Vector inverse(const Vector& xhat) const;  // U xhat

  // U diag(response) U^T x
  Vector filter(const Vector& response, const Vector& x) const;

 private:
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

// Throws ErrorCode::oracle_unavailable when N > cap.
SpectralBasis eigendecompose(const Laplacian& l, Index cap = kDefaultOracleCap);
SpectralBasis eigendecompose_dense(const Matrix& symmetric, Index cap = kDefaultOracleCap);

enum class GftDirection { forward, inverse };

BeliefVector gft(const SpectralBasis& basis, const BeliefVector& x, GftDirection direction);

}  // namespace snsr
