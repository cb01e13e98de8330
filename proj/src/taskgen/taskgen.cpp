#include "snsr/taskgen/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "snsr/graph/spectral_basis.hpp"

namespace snsr {

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::community: return "community";
    case TaskKind::contradiction: return "contradiction";
    case TaskKind::chain: return "chain";
  }
  return "community";
}

TaskKind task_kind_from_string(const std::string& s) {
  if (s == "community") return TaskKind::community;
  if (s == "contradiction") return TaskKind::contradiction;
  if (s == "chain") return TaskKind::chain;
  throw Error(ErrorCode::invalid_argument, "unknown task kind '" + s + "'");
}

void TaskInstance::validate() const {
  const Index n = graph.node_count();
  require(static_cast<Index>(labels.size()) == n, ErrorCode::dimension_mismatch,
          "task labels must cover every node");
  require(seed_beliefs.size() == n, ErrorCode::dimension_mismatch,
          "task seed beliefs must cover every node");
  require(seed_beliefs.allFinite(), ErrorCode::invalid_argument, "task seed beliefs must be finite");
  require((seed_beliefs.array() != 0.0).any(), ErrorCode::invalid_argument,
          "task seed support must be non-empty");
  for (const auto& [node, atom] : atom_map) {
    require(node >= 0 && node < n, ErrorCode::invalid_argument, "atom map node out of range");
    require(!rulebase || rulebase->atoms().count(atom) > 0, ErrorCode::invalid_argument,
            "atom '" + atom + "' missing from the rule base");
  }
}

int TaskInstance::positives() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), true));
}

namespace {

constexpr int kConnectRetries = 10;

template <typename Sampler>
Graph connected_sample(Sampler&& sample, const char* what) {
  for (int attempt = 0; attempt <= kConnectRetries; ++attempt) {
    Graph g = sample();
    if (g.is_connected()) return g;
  }
  throw Error(ErrorCode::not_converged,
              std::string(what) + ": no connected sample after " + std::to_string(kConnectRetries) + " retries");
}

// k distinct indices from [0, n), in draw order.
std::vector<Index> choose(std::mt19937_64& rng, Index n, Index k) {
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (Index s = 0; s < k; ++s) {
    std::uniform_int_distribution<Index> pick(s, n - 1);
    std::swap(pool[s], pool[pick(rng)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace

TaskInstance gen_community_task(const CommunityParams& p, std::uint64_t seed) {
  require(p.n >= 4, ErrorCode::invalid_argument, "community task needs n >= 4");
  require(p.intra_p > p.inter_p && p.inter_p >= 0.0 && p.intra_p <= 1.0, ErrorCode::invalid_argument,
          "community task needs 0 <= inter_p < intra_p <= 1");
  require(p.seed_fraction > 0.0 && p.seed_fraction < 1.0, ErrorCode::invalid_argument,
          "community seed_fraction must lie in (0, 1)");
  require(p.noise >= 0.0 && std::isfinite(p.noise), ErrorCode::invalid_argument,
          "community noise must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index half = p.n / 2;
  auto block = [&](Index i) { return i < half ? 0 : 1; };

  const Graph g = connected_sample(
      [&] {
        std::vector<Edge> edges;
        for (Index i = 0; i < p.n; ++i) {
          for (Index j = i + 1; j < p.n; ++j) {
            const double prob = block(i) == block(j) ? p.intra_p : p.inter_p;
            if (unit(rng) < prob) edges.push_back({i, j, 1.0});
          }
        }
        return Graph::create(p.n, std::move(edges));
      },
      "gen_community_task");

  const auto seeded = static_cast<Index>(std::ceil(p.seed_fraction * half - 1e-9));
  Vector x = Vector::Zero(p.n);
  std::vector<Index> support = choose(rng, half, seeded);
  for (Index i : support) x[i] = 1.0;
  for (Index i : choose(rng, p.n - half, seeded)) {
    x[half + i] = -1.0;
    support.push_back(half + i);
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Index i : support) x[i] += p.noise * gauss(rng);

  TaskInstance t;
  t.kind = TaskKind::community;
  t.graph = g;
  t.seed_beliefs = std::move(x);
  t.labels.resize(static_cast<std::size_t>(p.n));
  for (Index i = 0; i < p.n; ++i) t.labels[i] = block(i) == 0;
  t.allowed_bands = {0};
  t.seed = seed;
  t.validate();
  return t;
}

TaskInstance gen_contradiction_task(const ContradictionParams& p, std::uint64_t seed) {
  require(p.n >= 2, ErrorCode::invalid_argument, "contradiction task needs n >= 2");
  require(p.planted >= 0 && p.planted < p.n, ErrorCode::invalid_argument,
          "contradiction task needs 0 <= planted < n");
  require(p.base_p > 0.0 && p.base_p <= 1.0, ErrorCode::invalid_argument,
          "contradiction base_p must lie in (0, 1]");
  require(p.flip_magnitude >= 0.0 && std::isfinite(p.flip_magnitude), ErrorCode::invalid_argument,
          "contradiction flip_magnitude must be >= 0");
  require(p.smooth_modes >= 1 && p.smooth_modes <= p.n, ErrorCode::invalid_argument,
          "contradiction smooth_modes must lie in [1, n]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Graph g = connected_sample(
      [&] {
        std::vector<Edge> edges;
        for (Index i = 0; i < p.n; ++i) {
          for (Index j = i + 1; j < p.n; ++j) {
            if (unit(rng) < p.base_p) edges.push_back({i, j, 1.0});
          }
        }
        return Graph::create(p.n, std::move(edges));
      },
      "gen_contradiction_task");

  const SpectralBasis basis = eigendecompose(build_laplacian(g));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector mix(p.smooth_modes);
  for (int k = 0; k < p.smooth_modes; ++k) mix[k] = gauss(rng);
  Vector base = basis.eigenvectors().leftCols(p.smooth_modes) * mix;
  const double norm = base.norm();
  if (norm > 0.0) base *= std::sqrt(static_cast<double>(p.n)) / norm;

  TaskInstance t;
  t.kind = TaskKind::contradiction;
  t.graph = g;
  t.labels.assign(static_cast<std::size_t>(p.n), false);
  Vector x = base;
  for (Index i : choose(rng, p.n, p.planted)) {
    t.labels[i] = true;
    x[i] -= p.flip_magnitude * (base[i] >= 0.0 ? 1.0 : -1.0);
  }
  t.seed_beliefs = std::move(x);
  t.allowed_bands = {2};
  t.degenerate = p.planted == 0 || p.flip_magnitude == 0.0;
  t.seed = seed;
  t.validate();
  return t;
}

TaskInstance gen_chain_task(const ChainParams& p, std::uint64_t seed) {
  require(p.depth >= 1, ErrorCode::invalid_argument, "chain task needs depth >= 1");
  require(p.branching >= 1, ErrorCode::invalid_argument, "chain task needs branching >= 1");
  require(p.distractors >= 0, ErrorCode::invalid_argument, "chain distractors must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> fanout(1, p.branching);

  std::vector<Edge> edges;
  std::vector<HornClause> clauses;
  std::vector<Index> frontier{0};
  Index next = 1;
  auto atom = [](Index i) { return "reach_" + std::to_string(i); };
  for (int level = 0; level < p.depth; ++level) {
    std::vector<Index> children;
    for (Index parent : frontier) {
      const int count = fanout(rng);
      for (int c = 0; c < count; ++c) {
        edges.push_back({parent, next, 1.0});
        clauses.push_back({{atom(parent)}, atom(next)});
        children.push_back(next++);
      }
    }
    frontier = std::move(children);
  }
  const Index tree_nodes = next;
  std::uniform_int_distribution<Index> anchor(0, tree_nodes - 1);
  for (int d = 0; d < p.distractors; ++d) edges.push_back({anchor(rng), next++, 1.0});

  const Index n = next;
  TaskInstance t;
  t.kind = TaskKind::chain;
  t.graph = Graph::create(n, std::move(edges));
  t.seed_beliefs = Vector::Zero(n);
  t.seed_beliefs[0] = 1.0;
  t.labels.assign(static_cast<std::size_t>(n), false);
  std::vector<std::string> atoms;
  for (Index i = 0; i < n; ++i) {
    t.atom_map[i] = atom(i);
    atoms.push_back(atom(i));
    t.labels[i] = i < tree_nodes;
  }
  t.rulebase = RuleBase::create(std::move(atoms), std::move(clauses));
  t.allowed_bands = {0};
  t.seed = seed;
  t.validate();
  return t;
}

}  // namespace snsr
