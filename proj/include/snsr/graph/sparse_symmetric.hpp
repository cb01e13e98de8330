#pragma once

#include <vector>

#include "snsr/common.hpp"

namespace snsr {

// One stored entry of the upper triangle (row <= col).
struct SymmetricEntry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;

  friend bool operator==(const SymmetricEntry&, const SymmetricEntry&) = default;
};

// Sparse symmetric matrix kept as a coordinate-sorted upper triangle. Each
// off-diagonal entry is stored once and mirrored during multiplication, so a
// product costs O(N + stored entries).
class SymmetricSparse {
 public:
  SymmetricSparse() = default;

  // Entries may arrive in any triangle and order; (i, j) and (j, i) are the
  // same slot and duplicates are summed.
  static SymmetricSparse from_entries(Index n, std::vector<SymmetricEntry> entries);
  // Off-diagonal magnitudes <= drop_tol are not stored. Only the upper
  // triangle of `dense` is read.
  static SymmetricSparse from_dense(const Matrix& dense, double drop_tol = 0.0);
  static SymmetricSparse identity(Index n, double scale = 1.0);

  Index size() const { return n_; }
  const std::vector<SymmetricEntry>& entries() const { return entries_; }

  // y = A x
  void multiply(const Vector& x, Vector& y) const;
  Vector operator*(const Vector& x) const;

  // Returns a A + b I, keeping a full diagonal in the pattern.
  SymmetricSparse scaled_shift(double a, double b) const;

  Vector diagonal() const;
  Vector row_abs_sums_offdiag() const;
  Matrix to_dense() const;
  bool all_zero() const;

  friend bool operator==(const SymmetricSparse&, const SymmetricSparse&) = default;

 private:
  Index n_ = 0;
  std::vector<SymmetricEntry> entries_;
};

}  // namespace snsr
