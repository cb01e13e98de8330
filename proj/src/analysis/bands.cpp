#include "snsr/analysis/bands.hpp"

#include <algorithm>
#include <cmath>

namespace snsr {

namespace {
constexpr double kEdgeSlack = 1e-9;
}

BandPartition::BandPartition(std::vector<double> edges) : edges_(std::move(edges)) {
  require(edges_.size() >= 2, ErrorCode::invalid_argument, "band partition needs >= 2 edges");
  require(edges_.front() == 0.0, ErrorCode::invalid_argument, "band partition must start at 0");
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    require(std::isfinite(edges_[k]) && edges_[k] > edges_[k - 1], ErrorCode::invalid_argument,
            "band edges must be strictly increasing (gap or overlap)");
  }
}

BandPartition BandPartition::three_band(double lambda_max) {
  require(lambda_max > 0.0, ErrorCode::invalid_argument, "three_band: lambda_max must be positive");
  return BandPartition({0.0, lambda_max / 3.0, 2.0 * lambda_max / 3.0, lambda_max});
}

BandPartition BandPartition::three_band(const SpectralBasis& basis, double fallback) {
  const double top = basis.max_eigenvalue();
  return three_band(top > 0.0 ? top : fallback);
}

int BandPartition::band_of(double lambda) const {
  const double slack = kEdgeSlack * std::max(1.0, edges_.back());
  if (lambda < 0.0) {
    require(lambda >= -slack, ErrorCode::invalid_argument,
            "eigenvalue " + std::to_string(lambda) + " below the partition");
    return 0;
  }
  if (lambda >= edges_.back()) {
    require(lambda <= edges_.back() + slack, ErrorCode::invalid_argument,
            "eigenvalue " + std::to_string(lambda) + " above the partition upper edge " +
                std::to_string(edges_.back()));
    return band_count() - 1;
  }
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), lambda);
  return static_cast<int>(it - edges_.begin()) - 1;
}

std::vector<int> BandPartition::assign(const SpectralBasis& basis) const {
  std::vector<int> bands(static_cast<std::size_t>(basis.size()));
  for (Index i = 0; i < basis.size(); ++i) bands[i] = band_of(basis.eigenvalues()[i]);
  return bands;
}

BandReport band_energy(const SpectralBasis& basis, const Vector& y, const BandPartition& partition) {
  const Vector yhat = basis.forward(y);
  const std::vector<int> bands = partition.assign(basis);
  BandReport report{partition, Vector::Zero(partition.band_count()),
                    Vector::Zero(partition.band_count()), false};
  for (Index i = 0; i < basis.size(); ++i) report.energies[bands[i]] += yhat[i] * yhat[i];
  const double total = report.energies.sum();
  if (total > 0.0) {
    report.fractions = report.energies / total;
  } else {
    report.degenerate = true;
  }
  return report;
}

double allowed_fraction(const BandReport& report, const BandSet& allowed) {
  if (report.degenerate) return 0.0;
  double inside = 0.0;
  for (int b : allowed) {
    if (b >= 0 && b < report.fractions.size()) inside += report.fractions[b];
  }
  return inside;
}

double proof_band_agreement(const std::vector<std::pair<BandReport, BandSet>>& reports) {
  require(!reports.empty(), ErrorCode::invalid_argument, "proof_band_agreement: empty input");
  double sum = 0.0;
  int counted = 0;
  for (const auto& [report, allowed] : reports) {
    if (report.degenerate) continue;
    sum += allowed_fraction(report, allowed);
    ++counted;
  }
  require(counted > 0, ErrorCode::invalid_argument,
          "proof_band_agreement: every instance has zero energy");
  return sum / counted;
}

}  // namespace snsr
