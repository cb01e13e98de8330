#pragma once

#include "snsr/analysis/bands.hpp"
#include "snsr/filter/chebyshev.hpp"

namespace snsr {

// dL/dtheta_k = <dL/dy, b_k>
Vector grad_theta(const Vector& dLdy, const RecurrenceTrace& trace);

// Reverse-mode gradient of the loss with respect to every entry of L~,
// back-propagated through b_{k+1} = 2 L~ b_k - b_{k-1} and b_1 = L~ b_0 and
// returned symmetrized, (G + G^T) / 2. lambda_max is held fixed; the chain to
// L is the scalar 2 / lambda_max.
Matrix grad_scaled_laplacian(const Vector& dLdy, const RecurrenceTrace& trace,
                             const ChebyshevFilter& f, const ScaledLaplacian& lt);

// Nearest point of the combinatorial constraint set: off-diagonals clamped to
// <= 0, diagonal reset so every row sums to zero.
Laplacian project_laplacian(const Matrix& candidate);
Matrix project_laplacian_dense(const Matrix& candidate);

// Target spectrum Psi_r, read as a diagonal.
struct RuleConsistencyTarget {
  Vector target_spectrum;
};

// ||U^T L U - Psi||_F^2, which for an exact eigenbasis is ||lambda - psi||^2.
double rule_consistency_penalty(const SpectralBasis& basis, const RuleConsistencyTarget& target);
// d/dL of the penalty: U diag(2 (lambda - psi)) U^T (simple-spectrum formula).
Matrix rule_consistency_gradient(const SpectralBasis& basis, const RuleConsistencyTarget& target);

// Share of yhat energy outside `allowed`; zero for y = 0.
double proof_guided_penalty(const Vector& y, const SpectralBasis& basis,
                            const BandPartition& partition, const BandSet& allowed);
// d/dy of proof_guided_penalty.
Vector proof_guided_penalty_gradient(const Vector& y, const SpectralBasis& basis,
                                     const BandPartition& partition, const BandSet& allowed);

}  // namespace snsr
