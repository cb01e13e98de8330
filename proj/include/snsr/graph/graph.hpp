#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "snsr/common.hpp"

namespace snsr {

enum class WeightSign { unsigned_weights, signed_weights };

// Undirected weighted edge, canonicalized so that i < j.
struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected weighted graph. Edges are stored once per pair, sorted by
// (i, j). Immutable after construction.
class Graph {
 public:
  // Validates and canonicalizes the edge list. Throws Error on self-loops,
  // out-of-range indices, duplicate pairs, or weights that violate the sign
  // variant (unsigned: w > 0, signed: w != 0, both finite).
  static Graph create(Index node_count, std::vector<Edge> edges,
                      WeightSign sign = WeightSign::unsigned_weights);

  Index node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  WeightSign sign() const { return sign_; }
  bool has_negative_weights() const;

  // Number of connected components (union-find over the edge list).
  int component_count() const;
  bool is_connected() const { return component_count() == 1; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph(Index n, std::vector<Edge> edges, WeightSign sign)
      : node_count_(n), edges_(std::move(edges)), sign_(sign) {}

  Index node_count_ = 0;
  std::vector<Edge> edges_;
  WeightSign sign_ = WeightSign::unsigned_weights;
};

// Edge-list text: a header line "N M", then M lines "i j w". Lines starting
// with '#' and blank lines are skipped. Errors carry the 1-based line number.
Graph load_graph(std::istream& in, WeightSign sign = WeightSign::unsigned_weights);
Graph load_graph_file(const std::filesystem::path& path,
                      WeightSign sign = WeightSign::unsigned_weights);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace snsr
