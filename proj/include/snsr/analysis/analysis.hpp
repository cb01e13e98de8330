#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "snsr/analysis/bands.hpp"
#include "snsr/filter/chebyshev.hpp"

namespace snsr {

// y^T L y
double dirichlet_energy(const Laplacian& l, const Vector& y);

// Sigma_y = U diag(var_i * xhat_i^2) U^T
struct SpectralCovariance {
  Vector variances;
  Vector diagonal_spectral;
  std::optional<Matrix> vertex_matrix;

  double trace() const { return diagonal_spectral.sum(); }
};

SpectralCovariance spectral_covariance(const SpectralBasis& basis, const Vector& variances,
                                       const Vector& x, bool materialize = false);

// Var[h(lambda_i)] = sum_k var(theta_k) T_k(lambda~_i)^2 for independent
// coefficient noise with the given per-coefficient variances.
Vector response_variance(const SpectralBasis& basis, const Vector& theta_variance,
                         double lambda_max);

struct RobustnessCertificate {
  double bound = 0.0;
  int grid_points = 0;
  // True when the supremum came from a closed form instead of the grid.
  bool closed_form = false;
};

inline constexpr double kCertificateSlack = 1.05;
inline constexpr int kCertificateGrid = 1001;

// bound = 1.05 * sup |h| over [0, lambda_max], from a uniform grid or the
// closed-form supremum for diffusion / highpass / bandpass / identity.
RobustnessCertificate robustness_certificate(const ChebyshevFilter& f, int grid = kCertificateGrid);
RobustnessCertificate robustness_certificate(const AnalyticResponse& r, double lambda_max,
                                             int grid = kCertificateGrid);

// Adds seeded Gaussian noise of norm `magnitude` to the spectral coefficients
// of band `band` only.
Vector spectral_perturb(const SpectralBasis& basis, const Vector& x, int band, double magnitude,
                        const BandPartition& partition, std::uint64_t seed);

struct BandEdit {
  int band = 0;
  double gain = 1.0;
};

// Multiplies the spectral coefficients of each edited band by its gain.
Vector spectral_edit(const SpectralBasis& basis, const Vector& x, const std::vector<BandEdit>& edits,
                     const BandPartition& partition);

// ||a - b||^2 over spectral coefficient vectors of equal length.
double cospectral_loss(const Vector& src_hat, const Vector& tgt_hat);

inline constexpr int kTransferGrid = 64;

// Grid slot of eigenvalue lambda: nearest point to clamp(lambda / lambda_max, 0, 1).
int transfer_slot(double lambda, double lambda_max, int grid = kTransferGrid);

// Magnitude profile on a uniform grid over normalized frequency lambda/lambda_max:
// each coefficient's energy goes to the nearest grid point, and the profile
// stores the square root of the accumulated energy (so its norm equals ||xhat||).
Vector resample_spectrum(const Vector& eigenvalues, const Vector& xhat, double lambda_max,
                         int grid = kTransferGrid);

// Co-spectral transfer loss between two signals on (possibly different) graphs.
// Equal sizes compare spectral coefficients directly; otherwise both sides are
// resampled onto the common grid.
double cospectral_transfer_loss(const SpectralBasis& src_basis, const Vector& x_src,
                                double src_lambda_max, const SpectralBasis& tgt_basis,
                                const Vector& x_tgt, double tgt_lambda_max);

}  // namespace snsr
