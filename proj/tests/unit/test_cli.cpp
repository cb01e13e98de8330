#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "snsr/cli/bench.hpp"
#include "snsr/cli/cli.hpp"
#include "snsr/cli/io_util.hpp"
#include "snsr/filter/filter_io.hpp"
#include "snsr/parallel.hpp"

using namespace snsr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("snsr_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("fit with the identity response") {
  const fs::path dir = scratch("fit_identity");
  write(dir / "p2.txt", "2 1\n0 1 1.0\n");
  const Run r = run({"fit", "--graph", (dir / "p2.txt").string(), "--response", "identity", "--order", "4", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const ChebyshevFilter f = read_filter_file(dir / "filter.json");
  CHECK(f.order() == 4);
  CHECK(std::abs(f.theta()[0] - 1.0) <= 1e-12);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(f.theta()[k]) <= 1e-12);
  CHECK(fs::exists(dir / "fit.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("fit diffusion on P2 reports a small grid error") {
  const fs::path dir = scratch("fit_diffusion");
  write(dir / "p2.txt", "2 1\n0 1 1.0\n");
  const Run r = run({"fit", "--graph", (dir / "p2.txt").string(), "--response", "diffusion:tau=1", "--order", "16", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("max_grid_error ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 15)) <= 1e-6);
}

TEST_CASE("missing input file gives a nonzero exit") {
  const fs::path dir = scratch("missing");
  const Run r = run({"fit", "--graph", (dir / "nope.txt").string(), "--out-dir", dir.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("file not found") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"fit", "--order", "abc", "--graph", "x"}).code != 0);
  CHECK(run({"fit", "--bogus", "1"}).code == 2);
  CHECK(run({"fit", "--help"}).code == 0);
}

TEST_CASE("infer on P2 end to end") {
  const fs::path dir = scratch("infer");
  write(dir / "p2.txt", "2 1\n0 1 1.0\n");
  write(dir / "beliefs.csv", "node,value\n0,1\n1,0\n");
  REQUIRE(run({"fit", "--graph", (dir / "p2.txt").string(), "--response", "diffusion:tau=1", "--order", "24", "--out-dir", dir.string()}).code == 0);
  const Run r = run({"infer", "--graph", (dir / "p2.txt").string(), "--filter", (dir / "filter.json").string(), "--beliefs",
                     (dir / "beliefs.csv").string(), "--threshold", "0.5", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(slurp(dir / "predicates.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "node,y,soft,hard");
  const auto field = [](const std::string& row, int idx) {
    std::stringstream ss(row);
    std::string cell;
    for (int i = 0; i <= idx; ++i) std::getline(ss, cell, ',');
    return cell;
  };
  CHECK(std::stod(field(rows[1], 1)) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(std::stod(field(rows[2], 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(field(rows[1], 3) == "1");
  CHECK(field(rows[2], 3) == "0");
  CHECK(slurp(dir / "closure.txt") == "node_0\n");
}

TEST_CASE("infer with the identity filter and a rule base") {
  const fs::path dir = scratch("infer_rules");
  write(dir / "g.txt", "3 2\n0 1 1\n1 2 1\n");
  write(dir / "beliefs.csv", "0.9\n0.8\n0.7\n");
  write(dir / "rules.json", R"({"atoms": ["alarm"], "clauses": [{"body": ["node_0", "node_2"], "head": "alarm"}]})");
  REQUIRE(run({"fit", "--graph", (dir / "g.txt").string(), "--response", "identity", "--out-dir", dir.string()}).code == 0);
  Run r = run({"infer", "--graph", (dir / "g.txt").string(), "--filter", (dir / "filter.json").string(), "--beliefs",
               (dir / "beliefs.csv").string(), "--threshold", "0.5", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "closure.txt") == "node_0\nnode_1\nnode_2\n");
  r = run({"infer", "--graph", (dir / "g.txt").string(), "--filter", (dir / "filter.json").string(), "--beliefs",
           (dir / "beliefs.csv").string(), "--rulebase", (dir / "rules.json").string(), "--threshold", "0.5", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "closure.txt") == "alarm\nnode_0\nnode_1\nnode_2\n");
}

TEST_CASE("infer rejects a filter fitted at another scaling") {
  const fs::path dir = scratch("infer_mismatch");
  write(dir / "g.txt", "3 2\n0 1 1\n1 2 1\n");
  write(dir / "beliefs.csv", "1\n0\n0\n");
  write(dir / "filter.json", "{\"lambda_max\": 7.5, \"theta\": [1, 0.5]}\n");
  const Run r = run({"infer", "--graph", (dir / "g.txt").string(), "--filter", (dir / "filter.json").string(), "--beliefs",
                     (dir / "beliefs.csv").string(), "--out-dir", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("lambda") != std::string::npos);
}

TEST_CASE("gen is byte-identical for a fixed seed") {
  const fs::path a = scratch("gen_a");
  const fs::path b = scratch("gen_b");
  for (const std::string kind : {"community", "contradiction", "chain"}) {
    const std::vector<std::string> args{"gen", "--kind", kind, "--count", "2", "--seed", "5", "--n", "60",
                                        "--intra-p", "0.3", "--inter-p", "0.02", "--base-p", "0.15"};
    std::vector<std::string> first = args;
    std::vector<std::string> second = args;
    first.insert(first.end(), {"--out-dir", a.string()});
    second.insert(second.end(), {"--out-dir", b.string()});
    REQUIRE(run(first).code == 0);
    REQUIRE(run(second).code == 0);
    CHECK(slurp(a / "tasks.json") == slurp(b / "tasks.json"));
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  }
}

TEST_CASE("eval with the label model reports accuracy 1") {
  const fs::path dir = scratch("eval");
  REQUIRE(run({"gen", "--kind", "chain", "--count", "3", "--depth", "4", "--out-dir", dir.string()}).code == 0);
  const Run r = run({"eval", "--tasks", (dir / "tasks.json").string(), "--model", "labels", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(slurp(dir / "eval.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].find(",1,") != std::string::npos);
  std::stringstream ss(rows[1]);
  std::string cell;
  for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
  CHECK(cell == "1");
}

TEST_CASE("manifests record config and input digests and replay") {
  const fs::path dir = scratch("manifest");
  write(dir / "g.txt", "4 3\n0 1 1\n1 2 1\n2 3 1\n");
  REQUIRE(run({"fit", "--graph", (dir / "g.txt").string(), "--response", "highpass:beta=2", "--order", "6", "--out-dir", dir.string()}).code == 0);
  const std::string input_before = slurp(dir / "g.txt");
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("command") == "fit");
  CHECK(manifest.at("config").at("order") == 6);
  CHECK(manifest.at("config").at("response") == "highpass:beta=2");
  CHECK(manifest.at("inputs").at("graph").at("sha256") == cli::sha256_file(dir / "g.txt"));
  CHECK(slurp(dir / "g.txt") == input_before);

  const fs::path replay = scratch("manifest_replay");
  fs::copy_file(dir / "manifest.json", replay / "m.json");
  REQUIRE(run({"fit", "--config", (replay / "m.json").string(), "--out-dir", replay.string()}).code == 0);
  CHECK(slurp(replay / "filter.json") == slurp(dir / "filter.json"));
  CHECK(slurp(replay / "fit.csv") == slurp(dir / "fit.csv"));

  write(replay / "bad.json", "{\"no_such_key\": 1}");
  CHECK(run({"fit", "--config", (replay / "bad.json").string(), "--out-dir", replay.string()}).code == 1);
  CHECK(run({"gen", "--config", (dir / "manifest.json").string(), "--out-dir", replay.string()}).code == 1);
}

TEST_CASE("train, attribute, perturb and transfer commands") {
  const fs::path dir = scratch("pipeline");
  std::string g = "8 10\n";
  for (int i = 0; i < 8; ++i) g += std::to_string(i) + " " + std::to_string((i + 1) % 8) + " 1\n";
  g += "0 4 1\n2 6 1\n";
  write(dir / "g.txt", g);
  write(dir / "h.txt", "5 4\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n");
  write(dir / "x.csv", "1\n0.5\n-0.2\n0\n0.3\n-1\n0.7\n0.1\n");
  write(dir / "z.csv", "1\n0\n-1\n0\n1\n");

  Run r = run({"train", "--graph", (dir / "g.txt").string(), "--teacher", "diffusion:tau=0.5", "--epochs", "50", "--order", "6",
               "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(lines(slurp(dir / "loss_history.csv")).size() == 51);
  CHECK(fs::exists(dir / "filter.json"));

  r = run({"attribute", "--graph", (dir / "g.txt").string(), "--beliefs", (dir / "x.csv").string(), "--filter",
           (dir / "filter.json").string(), "--theta-variance", "0.01", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "bands.csv"));
  CHECK(fs::exists(dir / "certificate.csv"));
  CHECK(fs::exists(dir / "covariance.csv"));

  r = run({"perturb", "--graph", (dir / "g.txt").string(), "--beliefs", (dir / "x.csv").string(), "--band", "2", "--magnitude",
           "0.25", "--edits", "0:2,2:0", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(lines(slurp(dir / "perturbed.csv")).size() == 9);
  CHECK(lines(slurp(dir / "edited.csv")).size() == 9);

  r = run({"transfer", "--source_graph", (dir / "g.txt").string(), "--source_beliefs", (dir / "x.csv").string(), "--target_graph",
           (dir / "h.txt").string(), "--target_beliefs", (dir / "z.csv").string(), "--out-dir", dir.string()});
  CHECK(r.code == 2);
  r = run({"transfer", "--source-graph", (dir / "g.txt").string(), "--source-beliefs", (dir / "x.csv").string(), "--target-graph",
           (dir / "h.txt").string(), "--target-beliefs", (dir / "z.csv").string(), "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  const std::vector<std::string> t = lines(slurp(dir / "transfer.csv"));
  REQUIRE(t.size() == 2);
  CHECK(t[1].rfind("8,5,1,", 0) == 0);
}

TEST_CASE("belief file formats") {
  const fs::path dir = scratch("beliefs");
  write(dir / "a.csv", "node,value\n2,1.5\n0,-1\n");
  const Vector a = cli::read_beliefs_file(dir / "a.csv", 3);
  CHECK(a[0] == -1.0);
  CHECK(a[1] == 0.0);
  CHECK(a[2] == 1.5);
  write(dir / "b.csv", "0.25\n0.5\n");
  const Vector b = cli::read_beliefs_file(dir / "b.csv", 2);
  CHECK(b[1] == 0.5);
  write(dir / "c.csv", "5,1\n");
  CHECK_THROWS_AS(cli::read_beliefs_file(dir / "c.csv", 3), Error);
  CHECK(cli::beliefs_csv(b).rfind("node,value\n", 0) == 0);
}

TEST_CASE("sha256 and atomic writes") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const fs::path dir = scratch("atomic");
  cli::write_file_atomic(dir / "f.txt", "one");
  cli::write_file_atomic(dir / "f.txt", "two");
  CHECK(slurp(dir / "f.txt") == "two");
  CHECK_FALSE(fs::exists(dir / "f.txt.tmp"));
}

TEST_CASE("circulant graphs and the scaling table") {
  const Graph g = cli::circulant_graph(20, 4);
  CHECK(g.edge_count() == 40);
  cli::ScalingConfig c;
  c.nodes = 2000;
  c.doublings = 2;
  c.repeats = 3;
  const std::vector<cli::ScalingRow> rows = cli::scaling_sweep(c);
  CHECK(rows.size() == 6);
  CHECK(rows[0].ratio == 0.0);
  CHECK(rows[1].edges == 2 * rows[0].edges);
  CHECK(rows[4].order == 2 * rows[3].order);
  CHECK(cli::scaling_csv(rows).rfind("sweep,order,edges,nodes,median_ms,time_ratio\n", 0) == 0);
}

TEST_CASE("parallel_for visits each index once and rethrows the lowest failure") {
  std::vector<int> hits(100, 0);
  parallel_for(100, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  try {
    parallel_for(50, [](std::size_t i) {
      if (i == 7 || i == 30) throw std::runtime_error("fail " + std::to_string(i));
    });
    FAIL("expected rethrow");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "fail 7");
  }
}

}
