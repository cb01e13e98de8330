#pragma once

#include <cstdint>
#include <string>

#include "snsr/graph/graph.hpp"
#include "snsr/graph/sparse_symmetric.hpp"

namespace snsr {

enum class LaplacianVariant { combinatorial, normalized, signed_laplacian };

std::string to_string(LaplacianVariant v);
LaplacianVariant laplacian_variant_from_string(const std::string& s);

// Graph Laplacian with its degree vector (weighted degrees; absolute-value
// degrees for the signed variant).
class Laplacian {
 public:
  Laplacian(SymmetricSparse matrix, LaplacianVariant variant, Vector degree);

  const SymmetricSparse& matrix() const { return matrix_; }
  LaplacianVariant variant() const { return variant_; }
  const Vector& degree() const { return degree_; }
  Index size() const { return matrix_.size(); }

  Vector apply(const Vector& x) const { return matrix_ * x; }

 private:
  SymmetricSparse matrix_;
  LaplacianVariant variant_;
  Vector degree_;
};

// combinatorial: L = D - A
// normalized:    L = I - D^{-1/2} A D^{-1/2}; isolated nodes get a zero row
// signed:        L = |D| - A with |d|_i = sum_j |A_ij|
// Graphs with negative weights require the signed variant.
Laplacian build_laplacian(const Graph& g,
                          LaplacianVariant variant = LaplacianVariant::combinatorial);

// Wraps a dense symmetric matrix that already satisfies the combinatorial
// constraints (used by Laplacian learning).
Laplacian laplacian_from_dense(const Matrix& dense,
                               LaplacianVariant variant = LaplacianVariant::combinatorial);

struct PowerMethodOptions {
  int max_iters = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  double margin = 1.01;
};

struct LambdaMaxEstimate {
  double value = 1.0;
  // Zero operator: value is the 1.0 fallback.
  bool degenerate = false;
  // False when the iteration cap was hit and the Gershgorin bound was used.
  bool converged = true;
  int iterations = 0;
};

// Power iteration on L with a seeded start vector; the converged Rayleigh
// quotient is inflated by `margin` so it upper-bounds the spectrum.
LambdaMaxEstimate estimate_lambda_max(const Laplacian& l, const PowerMethodOptions& options = {});

// max_i (|L_ii| + sum_{j != i} |L_ij|)
double gershgorin_bound(const SymmetricSparse& m);

// L~ = (2 / lambda_max) L - I
class ScaledLaplacian {
 public:
  ScaledLaplacian(SymmetricSparse matrix, double lambda_max)
      : matrix_(std::move(matrix)), lambda_max_(lambda_max) {}

  const SymmetricSparse& matrix() const { return matrix_; }
  double lambda_max() const { return lambda_max_; }
  Index size() const { return matrix_.size(); }

 private:
  SymmetricSparse matrix_;
  double lambda_max_;
};

ScaledLaplacian scale_laplacian(const Laplacian& l, double lambda_max);

}  // namespace snsr
