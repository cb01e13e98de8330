#pragma once

#include <string>
#include <vector>

#include "snsr/analysis/bands.hpp"
#include "snsr/filter/chebyshev.hpp"

namespace snsr {

// Instance features fed to the gate: energy / N, low / mid / high band energy
// fractions of the input, log N.
inline constexpr int kGatingFeatureCount = 5;
std::vector<std::string> default_feature_names();

// x is read in the vertex domain; bands come from the three-band partition of
// the basis' top eigenvalue.
Vector gating_features(const SpectralBasis& basis, const Vector& x);
// Same features without an eigenbasis: band energies are x^T h_b(L) x for
// Chebyshev fits of the band indicators (order `order`), clamped to >= 0.
Vector gating_features(const ScaledLaplacian& lt, const Vector& x, int order = 32);

// Mixture of spectral experts h* = sum_b alpha_b(x) h^(b), alpha = softmax(W f).
struct MoSEModel {
  std::vector<ChebyshevFilter> experts;
  Matrix gating_weights;  // B x F
  std::vector<std::string> feature_names;

  int expert_count() const { return static_cast<int>(experts.size()); }
  int feature_count() const { return static_cast<int>(gating_weights.cols()); }
  int max_order() const;
  // B >= 1, W is B x F, experts share lambda_max.
  void validate() const;

  // Zero gating weights over the default features.
  static MoSEModel uniform(std::vector<ChebyshevFilter> experts);
};

Vector softmax(const Vector& logits);
Vector mose_gate(const MoSEModel& model, const Vector& features);

// sum_b alpha_b theta^(b), zero-padded to the longest expert.
ChebyshevFilter pooled_filter(const MoSEModel& model, const Vector& alpha);

// y = sum_b alpha_b cheb_apply(h^(b), lt, x)
Vector mose_apply(const MoSEModel& model, const ScaledLaplacian& lt, const Vector& x,
                  const Vector& features);

// Budgeted evaluation: only the `experts` highest-gated experts (ties to the
// lower index) are kept and renormalized, each truncated to `order`.
Vector mose_apply_budget(const MoSEModel& model, const ScaledLaplacian& lt, const Vector& x,
                         const Vector& features, int order, int experts);

nlohmann::json mose_to_json(const MoSEModel& model);
MoSEModel mose_from_json(const nlohmann::json& j);

}  // namespace snsr
