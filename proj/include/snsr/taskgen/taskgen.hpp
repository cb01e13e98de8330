#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snsr/graph/graph.hpp"
#include "snsr/rules/logic.hpp"

namespace snsr {

enum class TaskKind { community, contradiction, chain };
std::string to_string(TaskKind k);
TaskKind task_kind_from_string(const std::string& s);

struct TaskInstance {
  TaskKind kind = TaskKind::community;
  Graph graph = Graph::create(1, {});
  Vector seed_beliefs;
  std::vector<bool> labels;
  BandSet allowed_bands;
  std::map<Index, std::string> atom_map;
  std::optional<RuleBase> rulebase;
  // Set when the planted signal carries no information (no spikes, zero flip).
  bool degenerate = false;
  std::uint64_t seed = 0;

  // Labels cover every node; seed support is non-empty.
  void validate() const;
  int positives() const;
};

struct CommunityParams {
  Index n = 200;
  double intra_p = 0.08;
  double inter_p = 0.005;
  double seed_fraction = 0.05;
  double noise = 0.1;
};

// Two-block SBM. ceil(seed_fraction * block) nodes of each block are seeded
// with +1 (block one) / -1 (block two); Gaussian noise of standard deviation
// `noise` is added on the seeded nodes. Labels mark block one. Disconnected
// samples are redrawn up to 10 times.
TaskInstance gen_community_task(const CommunityParams& p, std::uint64_t seed);

struct ContradictionParams {
  Index n = 200;
  double base_p = 0.05;
  Index planted = 10;
  double flip_magnitude = 3.0;
  int smooth_modes = 4;
};

// Erdos-Renyi graph; base signal = random mixture of the `smooth_modes`
// lowest Laplacian eigenvectors scaled to norm sqrt(n); `planted` nodes get
// x_i = base_i - flip_magnitude * sign(base_i). Labels mark the spiked nodes.
TaskInstance gen_contradiction_task(const ContradictionParams& p, std::uint64_t seed);

struct ChainParams {
  int depth = 3;
  int branching = 2;
  // Extra leaves joined to the tree by an edge but by no clause.
  int distractors = 0;
};

// Random tree of the given depth (each internal node gets 1..branching
// children), atoms reach_<i>, clauses reach_parent -> reach_child, and a
// source fact at the root (seed belief 1). Labels are the nodes reachable by
// clause application from the root.
TaskInstance gen_chain_task(const ChainParams& p, std::uint64_t seed);

}  // namespace snsr
