#include "snsr/graph/sparse_symmetric.hpp"

#include <algorithm>
#include <cmath>

namespace snsr {

SymmetricSparse SymmetricSparse::from_entries(Index n, std::vector<SymmetricEntry> entries) {
  require(n >= 0, ErrorCode::invalid_argument, "matrix size must be non-negative");
  for (SymmetricEntry& e : entries) {
    require(e.row >= 0 && e.col >= 0 && e.row < n && e.col < n, ErrorCode::invalid_argument,
            "sparse entry index out of range");
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(), [](const SymmetricEntry& a, const SymmetricEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<SymmetricEntry> merged;
  merged.reserve(entries.size());
  for (const SymmetricEntry& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  SymmetricSparse m;
  m.n_ = n;
  m.entries_ = std::move(merged);
  return m;
}

SymmetricSparse SymmetricSparse::from_dense(const Matrix& dense, double drop_tol) {
  require(dense.rows() == dense.cols(), ErrorCode::dimension_mismatch,
          "from_dense: matrix must be square");
  const Index n = static_cast<Index>(dense.rows());
  std::vector<SymmetricEntry> entries;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = dense(i, j);
      if (i == j ? v != 0.0 : std::abs(v) > drop_tol) entries.push_back({i, j, v});
    }
  }
  SymmetricSparse m;
  m.n_ = n;
  m.entries_ = std::move(entries);
  return m;
}

SymmetricSparse SymmetricSparse::identity(Index n, double scale) {
  std::vector<SymmetricEntry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) entries.push_back({i, i, scale});
  SymmetricSparse m;
  m.n_ = n;
  m.entries_ = std::move(entries);
  return m;
}

void SymmetricSparse::multiply(const Vector& x, Vector& y) const {
  require_same_size(x.size(), n_, "sparse multiply");
  y.setZero(n_);
  const double* xs = x.data();
  double* ys = y.data();
  for (const SymmetricEntry& e : entries_) {
    ys[e.row] += e.value * xs[e.col];
    if (e.row != e.col) ys[e.col] += e.value * xs[e.row];
  }
}

Vector SymmetricSparse::operator*(const Vector& x) const {
  Vector y;
  multiply(x, y);
  return y;
}

SymmetricSparse SymmetricSparse::scaled_shift(double a, double b) const {
  std::vector<SymmetricEntry> entries;
  entries.reserve(entries_.size() + static_cast<std::size_t>(n_));
  std::size_t k = 0;
  // Entries are sorted by (row, col); the diagonal of row r is the first entry
  // of that row when present.
  for (Index r = 0; r < n_; ++r) {
    bool has_diag = k < entries_.size() && entries_[k].row == r && entries_[k].col == r;
    if (has_diag) {
      entries.push_back({r, r, a * entries_[k].value + b});
      ++k;
    } else {
      entries.push_back({r, r, b});
    }
    while (k < entries_.size() && entries_[k].row == r) {
      entries.push_back({r, entries_[k].col, a * entries_[k].value});
      ++k;
    }
  }
  SymmetricSparse m;
  m.n_ = n_;
  m.entries_ = std::move(entries);
  return m;
}

Vector SymmetricSparse::diagonal() const {
  Vector d = Vector::Zero(n_);
  for (const SymmetricEntry& e : entries_) {
    if (e.row == e.col) d[e.row] += e.value;
  }
  return d;
}

Vector SymmetricSparse::row_abs_sums_offdiag() const {
  Vector s = Vector::Zero(n_);
  for (const SymmetricEntry& e : entries_) {
    if (e.row != e.col) {
      s[e.row] += std::abs(e.value);
      s[e.col] += std::abs(e.value);
    }
  }
  return s;
}

Matrix SymmetricSparse::to_dense() const {
  Matrix d = Matrix::Zero(n_, n_);
  for (const SymmetricEntry& e : entries_) {
    d(e.row, e.col) += e.value;
    if (e.row != e.col) d(e.col, e.row) += e.value;
  }
  return d;
}

bool SymmetricSparse::all_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SymmetricEntry& e) { return e.value == 0.0; });
}

}  // namespace snsr
