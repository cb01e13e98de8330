#include <queue>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "snsr/analysis/analysis.hpp"
#include "snsr/graph/laplacian.hpp"
#include "snsr/taskgen/evaluate.hpp"
#include "snsr/taskgen/task_io.hpp"
#include "snsr/taskgen/taskgen.hpp"

using namespace snsr;

namespace {

// Nodes reachable from `root` by breadth-first search over the graph edges.
std::vector<bool> reachable(const Graph& g, Index root) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(g.node_count()));
  for (const auto& e : g.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<bool> seen(adj.size(), false);
  std::queue<Index> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    const Index v = q.front();
    q.pop();
    for (Index w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
    }
  }
  return seen;
}

// Brute-force AUC over every (positive, negative) pair.
double pair_auc(const Vector& s, const std::vector<bool>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!labels[i]) continue;
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      if (labels[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

bool same_instance(const TaskInstance& a, const TaskInstance& b) {
  return a.kind == b.kind && a.graph == b.graph && (a.seed_beliefs.array() == b.seed_beliefs.array()).all() &&
         a.labels == b.labels && a.allowed_bands == b.allowed_bands && a.atom_map == b.atom_map &&
         a.rulebase == b.rulebase && a.degenerate == b.degenerate && a.seed == b.seed;
}

void check_graph_invariants(const TaskInstance& t) {
  const Matrix l = build_laplacian(t.graph).matrix().to_dense();
  CHECK((l * Vector::Ones(t.graph.node_count())).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((l - oracle::laplacian(t.graph)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(oracle::eig(l).values.minCoeff() >= -1e-9);
}

}  // namespace

TEST_SUITE("taskgen") {

TEST_CASE("community task structure") {
  const TaskInstance t = gen_community_task({}, 1);
  CHECK(t.kind == TaskKind::community);
  CHECK(t.graph.node_count() == 200);
  CHECK(t.graph.is_connected());
  CHECK(oracle::components(t.graph) == 1);
  CHECK(t.allowed_bands == BandSet{0});
  int seeded = 0;
  for (Index i = 0; i < 200; ++i) {
    CHECK(t.labels[i] == (i < 100));
    if (t.seed_beliefs[i] != 0.0) {
      ++seeded;
      CHECK((t.seed_beliefs[i] > 0.0) == t.labels[i]);
    }
  }
  CHECK(seeded == 10);
  check_graph_invariants(t);
  CHECK(same_instance(t, gen_community_task({}, 1)));
  CHECK_FALSE(same_instance(t, gen_community_task({}, 2)));
  CHECK_THROWS_AS(gen_community_task({200, 0.01, 0.05, 0.05, 0.1}, 1), Error);
  CHECK_THROWS_AS(gen_community_task({200, 0.08, 0.005, 1.0, 0.1}, 1), Error);
}

TEST_CASE("community seeds alone solve the task when nearly every node is seeded") {
  CommunityParams p;
  p.n = 60;
  p.intra_p = 0.3;
  p.inter_p = 0.02;
  p.seed_fraction = 0.999;
  p.noise = 0.0;
  const TaskInstance t = gen_community_task(p, 3);
  const EvalReport r = evaluate(oracle_model("seeds", AnalyticResponse::identity()), {t});
  CHECK(r.accuracy == 1.0);
}

TEST_CASE("community recovery is monotone in noise on average") {
  const std::vector<double> noises{0.5, 0.25, 0.1, 0.0};
  std::vector<double> acc;
  for (double noise : noises) {
    CommunityParams p;
    p.noise = noise;
    std::vector<TaskInstance> tasks;
    for (std::uint64_t s = 0; s < 60; ++s) tasks.push_back(gen_community_task(p, 500 + s));
    acc.push_back(evaluate(rational_model("diffusion", 1.0), tasks).accuracy);
  }
  for (std::size_t i = 1; i < acc.size(); ++i) CHECK(acc[i] >= acc[i - 1]);
  CHECK(acc.back() >= 0.95);
}

TEST_CASE("contradiction task structure") {
  const TaskInstance t = gen_contradiction_task({}, 4);
  CHECK(t.kind == TaskKind::contradiction);
  CHECK(t.positives() == 10);
  CHECK(t.allowed_bands == BandSet{2});
  CHECK_FALSE(t.degenerate);
  check_graph_invariants(t);
  CHECK(same_instance(t, gen_contradiction_task({}, 4)));

  ContradictionParams none;
  none.planted = 0;
  const TaskInstance z = gen_contradiction_task(none, 4);
  CHECK(z.positives() == 0);
  CHECK(z.degenerate);

  ContradictionParams flat;
  flat.flip_magnitude = 0.0;
  const TaskInstance f = gen_contradiction_task(flat, 4);
  CHECK(f.degenerate);
  ContradictionParams clean = flat;
  clean.planted = 0;
  CHECK((gen_contradiction_task(clean, 4).seed_beliefs.array() == f.seed_beliefs.array()).all());
  CHECK_THROWS_AS(gen_contradiction_task({10, 0.5, 10, 3.0, 4}, 1), Error);
}

TEST_CASE("high-pass ranking detects planted contradictions") {
  std::vector<TaskInstance> tasks;
  for (std::uint64_t s = 0; s < 5; ++s) tasks.push_back(gen_contradiction_task({}, 100 + s));
  const EvalReport r = evaluate(oracle_model("hp", AnalyticResponse::highpass(1.0)), tasks);
  REQUIRE(r.auc);
  CHECK(*r.auc >= 0.9);
  for (const auto& t : tasks) {
    const auto ctx = GraphContext::make(build_laplacian(t.graph), true);
    const Vector y = dense_filter_apply(*ctx->basis, AnalyticResponse::highpass(1.0), t.seed_beliefs);
    CHECK(rank_auc(y.cwiseAbs(), t.labels) == doctest::Approx(pair_auc(y.cwiseAbs(), t.labels)).epsilon(1e-15));
  }
}

TEST_CASE("rank_auc examples") {
  const Vector s = (Vector(4) << 0.9, 0.1, 0.5, 0.5).finished();
  CHECK(rank_auc(s, {true, false, true, false}) == doctest::Approx(pair_auc(s, {true, false, true, false})));
  CHECK(rank_auc(s, {true, false, false, false}) == 1.0);
  CHECK(rank_auc(Vector::Ones(4), {true, false, true, false}) == 0.5);
  CHECK_THROWS_AS(rank_auc(s, {false, false, false, false}), Error);
}

TEST_CASE("chain task depth 1 adds the root's neighbours") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const TaskInstance t = gen_chain_task({1, 3, 0}, s);
    REQUIRE(t.rulebase);
    const AtomSet closure = forward_chain(*t.rulebase, {"reach_0"});
    AtomSet want{"reach_0"};
    for (const auto& e : t.graph.edges()) {
      if (e.i == 0) want.insert("reach_" + std::to_string(e.j));
    }
    CHECK(closure == want);
    CHECK(closure.size() == static_cast<std::size_t>(t.graph.node_count()));
  }
}

TEST_CASE("chain pipeline closure equals the brute-force graph closure") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const TaskInstance t = gen_chain_task({6, 2, 0}, 30 + s);
    CHECK(same_instance(t, gen_chain_task({6, 2, 0}, 30 + s)));
    check_graph_invariants(t);
    const auto ctx = GraphContext::make(build_laplacian(t.graph), true);
    const Vector y = dense_filter_apply(*ctx->basis, AnalyticResponse::identity(), t.seed_beliefs);
    const std::vector<bool> pred = chain_prediction(t, y, 0.5);
    CHECK(pred == reachable(t.graph, 0));
    CHECK(pred == t.labels);
  }
}

TEST_CASE("chain accuracy equals brute-force closure on small rulebases") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const TaskInstance t = gen_chain_task({2, 2, 3}, 60 + s);
    if (t.rulebase->atoms().size() > 12) continue;
    std::mt19937_64 rng(s);
    const Vector y = oracle::gaussian(t.graph.node_count(), rng);
    AtomSet facts;
    for (Index i = 0; i < t.graph.node_count(); ++i) {
      if (y[i] > 0.3) facts.insert(t.atom_map.at(i));
    }
    const AtomSet model = oracle::minimal_model(*t.rulebase, facts);
    double tp = 0.0;
    double fp = 0.0;
    double fn = 0.0;
    for (Index i = 0; i < t.graph.node_count(); ++i) {
      const bool p = model.count(t.atom_map.at(i)) > 0;
      tp += p && t.labels[i];
      fp += p && !t.labels[i];
      fn += !p && t.labels[i];
    }
    const double f1 = tp == 0.0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
    CHECK(instance_accuracy(t, y, 0.3) == doctest::Approx(f1).epsilon(1e-15));
  }
}

TEST_CASE("evaluate examples") {
  std::vector<TaskInstance> tasks;
  for (std::uint64_t s = 0; s < 4; ++s) {
    tasks.push_back(gen_community_task({}, s));
    tasks.push_back(gen_contradiction_task({}, s));
    tasks.push_back(gen_chain_task({3, 2, 2}, s));
  }
  const EvalReport perfect = evaluate(label_model(), tasks);
  CHECK(perfect.accuracy == 1.0);
  for (double a : perfect.per_instance) CHECK(a == 1.0);

  std::vector<TaskInstance> community;
  for (std::uint64_t s = 0; s < 4; ++s) community.push_back(gen_community_task({}, s));
  CHECK(evaluate(constant_model("zero", 0.0), community).accuracy == doctest::Approx(0.5));

  const EvalReport a = evaluate(response_model("diff", AnalyticResponse::diffusion(1.0)), tasks);
  const EvalReport b = evaluate(response_model("diff", AnalyticResponse::diffusion(1.0)), tasks);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.per_instance == b.per_instance);
  CHECK(a.proof_band_agreement == b.proof_band_agreement);
  CHECK((a.band_fractions.array() == b.band_fractions.array()).all());
  CHECK(a.accuracy >= 0.0);
  CHECK(a.accuracy <= 1.0);
  CHECK(a.latency_ms >= 0.0);
  CHECK(a.band_fractions.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(evaluate(label_model(), {}), Error);
}

TEST_CASE("robustness drop") {
  std::vector<TaskInstance> tasks;
  for (std::uint64_t s = 0; s < 10; ++s) tasks.push_back(gen_community_task({}, 200 + s));
  const Model m = oracle_model("lowpass", AnalyticResponse::diffusion(2.0));
  CHECK(robustness_drop(m, tasks, {2, 0.0, 1}) == 0.0);
  const double high = robustness_drop(m, tasks, {2, 3.0, 7});
  CHECK(high == robustness_drop(m, tasks, {2, 3.0, 7}));
  const double low = robustness_drop(m, tasks, {0, 3.0, 7});
  CHECK(high <= low);
}

TEST_CASE("task file round trip") {
  std::vector<TaskInstance> tasks{gen_community_task({40, 0.3, 0.02, 0.1, 0.1}, 1), gen_contradiction_task({30, 0.3, 3, 2.0, 3}, 2),
                                  gen_chain_task({3, 2, 1}, 3)};
  const std::string text = tasks_to_text(tasks);
  std::istringstream in(text);
  const std::vector<TaskInstance> back = read_tasks(in);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_instance(back[i], tasks[i]));
  CHECK(tasks_to_text(back) == text);
  std::istringstream bad("{\"tasks\": [{\"kind\": \"community\"}]}");
  CHECK_THROWS_AS(read_tasks(bad), Error);
}

TEST_CASE("mose models evaluate with and without allocation") {
  std::vector<TaskInstance> tasks;
  for (std::uint64_t s = 0; s < 3; ++s) tasks.push_back(gen_community_task({}, 300 + s));
  const auto ctx = GraphContext::make(build_laplacian(tasks[0].graph), false);
  const double lm = ctx->scaled.lambda_max();
  const MoSEModel m = MoSEModel::uniform({fit_chebyshev(AnalyticResponse::diffusion(1.0), 16, lm),
                                          fit_chebyshev(AnalyticResponse::diffusion(2.0), 16, lm)});
  const EvalReport plain = evaluate(mose_model("mose", m), tasks);
  const EvalReport alloc = evaluate(allocated_mose_model("alloc", m, AllocationConfig{}), tasks);
  CHECK(plain.accuracy >= 0.9);
  CHECK(alloc.accuracy >= 0.0);
  CHECK(alloc.accuracy <= 1.0);
}

TEST_CASE("eval csv") {
  EvalReport r;
  r.model = "m";
  r.instances = 2;
  r.accuracy = 0.75;
  r.band_fractions = Vector::Zero(3);
  const std::string header = eval_csv_header();
  CHECK(header.rfind("model,", 0) != std::string::npos);
  CHECK(header.find("latency_ms") != std::string::npos);
  const std::string row = eval_csv_row(r, "set");
  CHECK(row.find("0.75") != std::string::npos);
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

}
