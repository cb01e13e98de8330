#pragma once

#include <utility>
#include <vector>

#include "snsr/graph/spectral_basis.hpp"

namespace snsr {

// Contiguous frequency bands over [0, lambda_max]. Band b is
// [edges[b], edges[b+1]) except the last, which is closed.
class BandPartition {
 public:
  // Requires first edge 0 and strictly increasing edges (at least two).
  explicit BandPartition(std::vector<double> edges);

  // (0, lmax/3, 2 lmax/3, lmax)
  static BandPartition three_band(double lambda_max);
  // three_band at the basis's largest eigenvalue, or at `fallback` when that is 0.
  static BandPartition three_band(const SpectralBasis& basis, double fallback);

  const std::vector<double>& edges() const { return edges_; }
  int band_count() const { return static_cast<int>(edges_.size()) - 1; }
  double upper() const { return edges_.back(); }

  // Band containing lambda. Values within a small relative slack below 0 or
  // above the last edge snap to the end bands; anything further out throws.
  int band_of(double lambda) const;

  // Band index of every eigenvalue in the basis.
  std::vector<int> assign(const SpectralBasis& basis) const;

 private:
  std::vector<double> edges_;
};

struct BandReport {
  BandPartition partition;
  Vector energies;
  Vector fractions;
  // Zero-energy signal: fractions are all zero.
  bool degenerate = false;

  double total() const { return energies.sum(); }
};

// Energy of band b = sum of yhat_i^2 over eigenvalues in b.
BandReport band_energy(const SpectralBasis& basis, const Vector& y, const BandPartition& partition);

// Fraction of energy inside `allowed`; 0 for a degenerate report.
double allowed_fraction(const BandReport& report, const BandSet& allowed);

// Mean allowed-band energy fraction over non-degenerate reports. Throws when
// the list is empty or every report is degenerate.
double proof_band_agreement(const std::vector<std::pair<BandReport, BandSet>>& reports);

}  // namespace snsr
