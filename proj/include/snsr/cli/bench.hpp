#pragma once

#include <string>
#include <vector>

#include "snsr/graph/graph.hpp"

namespace snsr::cli {

// Circulant graph on n nodes: i ~ i + o (mod n) for o = 1..degree/2, so
// |E| = n * degree / 2.
Graph circulant_graph(Index n, int degree);

struct ScalingConfig {
  Index nodes = 50000;
  int base_degree = 4;
  int base_order = 8;
  int doublings = 3;
  int repeats = 9;
  std::uint64_t seed = 0;
};

struct ScalingRow {
  std::string sweep;  // "edges" or "order"
  int order = 0;
  std::size_t edges = 0;
  Index nodes = 0;
  double median_ms = 0.0;
  // median_ms over the previous row of the same sweep (0 for the first).
  double ratio = 0.0;
};

// Median cheb_apply wall time while doubling |E| at fixed K, then doubling K
// at fixed |E|.
std::vector<ScalingRow> scaling_sweep(const ScalingConfig& config);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

}  // namespace snsr::cli
