#include "snsr/analysis/analysis.hpp"

#include <cmath>
#include <random>

namespace snsr {

double dirichlet_energy(const Laplacian& l, const Vector& y) {
  require_same_size(y.size(), l.size(), "dirichlet_energy");
  return y.dot(l.apply(y));
}

SpectralCovariance spectral_covariance(const SpectralBasis& basis, const Vector& variances,
                                       const Vector& x, bool materialize) {
  require_same_size(variances.size(), basis.size(), "spectral_covariance variances");
  require((variances.array() >= 0.0).all() && variances.allFinite(), ErrorCode::invalid_argument,
          "spectral_covariance: variances must be finite and non-negative");
  const Vector xhat = basis.forward(x);
  SpectralCovariance cov;
  cov.variances = variances;
  cov.diagonal_spectral = variances.cwiseProduct(xhat.cwiseAbs2());
  if (materialize) {
    const Matrix& u = basis.eigenvectors();
    cov.vertex_matrix = u * cov.diagonal_spectral.asDiagonal() * u.transpose();
  }
  return cov;
}

Vector response_variance(const SpectralBasis& basis, const Vector& theta_variance,
                         double lambda_max) {
  require(lambda_max > 0.0, ErrorCode::invalid_argument, "response_variance: lambda_max must be positive");
  require((theta_variance.array() >= 0.0).all(), ErrorCode::invalid_argument,
          "coefficient variances must be non-negative");
  Vector out = Vector::Zero(basis.size());
  for (Index i = 0; i < basis.size(); ++i) {
    const double z = 2.0 * basis.eigenvalues()[i] / lambda_max - 1.0;
    double t_prev = 1.0;
    double t_cur = z;
    for (Eigen::Index k = 0; k < theta_variance.size(); ++k) {
      const double t = k == 0 ? 1.0 : (k == 1 ? z : 2.0 * z * t_cur - t_prev);
      if (k >= 2) {
        t_prev = t_cur;
        t_cur = t;
      }
      out[i] += theta_variance[k] * t * t;
    }
  }
  return out;
}

namespace {

double grid_sup(const ResponseFn& h, double lambda_max, int grid) {
  double sup = 0.0;
  for (int i = 0; i < grid; ++i) {
    sup = std::max(sup, std::abs(h(lambda_max * i / (grid - 1))));
  }
  return sup;
}

}  // namespace

RobustnessCertificate robustness_certificate(const ChebyshevFilter& f, int grid) {
  require(grid >= 2, ErrorCode::invalid_argument, "certificate grid needs >= 2 points");
  return {kCertificateSlack * grid_sup(f.as_function(), f.lambda_max(), grid), grid, false};
}

RobustnessCertificate robustness_certificate(const AnalyticResponse& r, double lambda_max, int grid) {
  require(grid >= 2, ErrorCode::invalid_argument, "certificate grid needs >= 2 points");
  require(lambda_max > 0.0, ErrorCode::invalid_argument, "certificate lambda_max must be positive");
  double sup = 0.0;
  bool closed = true;
  switch (r.kind()) {
    case ResponseKind::diffusion:
    case ResponseKind::identity: sup = 1.0; break;
    case ResponseKind::highpass: sup = lambda_max / (lambda_max + r.beta()); break;
    case ResponseKind::gaussian_bandpass: sup = r.center() <= lambda_max ? 1.0 : r(lambda_max); break;
    case ResponseKind::polynomial:
      sup = grid_sup(r.as_function(), lambda_max, grid);
      closed = false;
      break;
  }
  return {kCertificateSlack * sup, grid, closed};
}

Vector spectral_perturb(const SpectralBasis& basis, const Vector& x, int band, double magnitude,
                        const BandPartition& partition, std::uint64_t seed) {
  require_same_size(x.size(), basis.size(), "spectral_perturb");
  require(band >= 0 && band < partition.band_count(), ErrorCode::invalid_argument,
          "spectral_perturb: band " + std::to_string(band) + " out of range");
  require(std::isfinite(magnitude) && magnitude >= 0.0, ErrorCode::invalid_argument,
          "spectral_perturb: magnitude must be finite and non-negative");
  const std::vector<int> bands = partition.assign(basis);
  std::vector<Index> members;
  for (Index i = 0; i < basis.size(); ++i) {
    if (bands[i] == band) members.push_back(i);
  }
  require(!members.empty(), ErrorCode::invalid_argument,
          "spectral_perturb: band " + std::to_string(band) + " contains no eigenvalues");
  if (magnitude == 0.0) return x;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector noise = Vector::Zero(basis.size());
  double norm = 0.0;
  while (norm == 0.0) {
    for (Index i : members) noise[i] = gauss(rng);
    norm = noise.norm();
  }
  noise *= magnitude / norm;
  return x + basis.inverse(noise);
}

Vector spectral_edit(const SpectralBasis& basis, const Vector& x, const std::vector<BandEdit>& edits,
                     const BandPartition& partition) {
  Vector gains = Vector::Ones(partition.band_count());
  std::vector<bool> seen(static_cast<std::size_t>(partition.band_count()), false);
  for (const BandEdit& e : edits) {
    require(e.band >= 0 && e.band < partition.band_count(), ErrorCode::invalid_argument,
            "spectral_edit: band " + std::to_string(e.band) + " out of range");
    require(std::isfinite(e.gain), ErrorCode::invalid_argument, "spectral_edit: gain not finite");
    require(!seen[e.band], ErrorCode::invalid_argument,
            "spectral_edit: overlapping edits on band " + std::to_string(e.band));
    seen[e.band] = true;
    gains[e.band] = e.gain;
  }
  const std::vector<int> bands = partition.assign(basis);
  Vector response(basis.size());
  for (Index i = 0; i < basis.size(); ++i) response[i] = gains[bands[i]];
  return basis.filter(response, x);
}

double cospectral_loss(const Vector& src_hat, const Vector& tgt_hat) {
  require_same_size(src_hat.size(), tgt_hat.size(), "cospectral_loss");
  return (src_hat - tgt_hat).squaredNorm();
}

int transfer_slot(double lambda, double lambda_max, int grid) {
  const double t = std::clamp(lambda / lambda_max, 0.0, 1.0);
  return static_cast<int>(std::lround(t * (grid - 1)));
}

Vector resample_spectrum(const Vector& eigenvalues, const Vector& xhat, double lambda_max, int grid) {
  require_same_size(eigenvalues.size(), xhat.size(), "resample_spectrum");
  require(grid >= 2, ErrorCode::invalid_argument, "resample grid needs >= 2 points");
  require(lambda_max > 0.0, ErrorCode::invalid_argument, "resample lambda_max must be positive");
  Vector energy = Vector::Zero(grid);
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    energy[transfer_slot(eigenvalues[i], lambda_max, grid)] += xhat[i] * xhat[i];
  }
  return energy.cwiseSqrt();
}

double cospectral_transfer_loss(const SpectralBasis& src_basis, const Vector& x_src,
                                double src_lambda_max, const SpectralBasis& tgt_basis,
                                const Vector& x_tgt, double tgt_lambda_max) {
  const Vector src_hat = src_basis.forward(x_src);
  const Vector tgt_hat = tgt_basis.forward(x_tgt);
  if (src_hat.size() == tgt_hat.size()) return cospectral_loss(src_hat, tgt_hat);
  return cospectral_loss(resample_spectrum(src_basis.eigenvalues(), src_hat, src_lambda_max),
                         resample_spectrum(tgt_basis.eigenvalues(), tgt_hat, tgt_lambda_max));
}

}  // namespace snsr
