#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "snsr/graph/graph.hpp"
#include "snsr/graph/laplacian.hpp"
#include "snsr/graph/spectral_basis.hpp"

using namespace snsr;

namespace {

Graph parse(const std::string& text, WeightSign sign = WeightSign::unsigned_weights) {
  std::istringstream in(text);
  return load_graph(in, sign);
}

std::string error_of(const std::string& text, WeightSign sign = WeightSign::unsigned_weights) {
  try {
    parse(text, sign);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Graph p2() { return Graph::create(2, {{0, 1, 1.0}}); }
Graph k3() { return Graph::create(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

}  // namespace

TEST_SUITE("graph_core") {

TEST_CASE("load_graph parses edge lists") {
  const Graph g = parse("2 1\n0 1 1.0");
  CHECK(g.node_count() == 2);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, 1.0});

  const Graph t = parse("# triangle\n3 3\n0 1 1\n\n1 2 1\n0 2 1\n");
  CHECK(t == k3());
}

TEST_CASE("load_graph rejects malformed input with line numbers") {
  CHECK(error_of("2 1\n0 0 1.0").find("self-loop") != std::string::npos);
  CHECK(error_of("2 1\n0 0 1.0").find("line 2") != std::string::npos);
  CHECK(error_of("2 1\n0 5 1.0").find("out of range") != std::string::npos);
  CHECK(error_of("2 1\n0 1 0", WeightSign::signed_weights).find("zero weight") != std::string::npos);
  CHECK(error_of("2 1\n0 1 -1").find("positive") != std::string::npos);
  CHECK(error_of("3 2\n0 1 1\n1 0 2").find("duplicate") != std::string::npos);
  CHECK(error_of("3 2\n0 1 1\n").find("edge") != std::string::npos);
  CHECK(error_of("3 1\n0 x 1\n").find("line 2") != std::string::npos);
  CHECK_NOTHROW(parse("2 1\n0 1 -1", WeightSign::signed_weights));
}

TEST_CASE("edge list round trip is exact") {
  const Graph g = oracle::random_graph(12, 0.4, 3, true);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(parse(out.str()) == g);
}

TEST_CASE("build_laplacian small cases") {
  const Matrix l = build_laplacian(p2()).matrix().to_dense();
  CHECK(l(0, 0) == 1.0);
  CHECK(l(0, 1) == -1.0);
  CHECK(l(1, 0) == -1.0);
  CHECK(l(1, 1) == 1.0);

  const Laplacian empty = build_laplacian(Graph::create(3, {}));
  CHECK(empty.matrix().to_dense().isZero(0.0));

  const oracle::Eig e = oracle::eig(build_laplacian(k3()).matrix().to_dense());
  CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CHECK(e.values[2] == doctest::Approx(3.0));
}

TEST_CASE("Laplacian variants satisfy their invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(15, 0.3, seed, true);
    const Matrix dense = build_laplacian(g).matrix().to_dense();
    CHECK((dense - oracle::laplacian(g)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((dense * Vector::Ones(15)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(oracle::eig(dense).values.minCoeff() >= -1e-9);

    const Matrix norm = build_laplacian(g, LaplacianVariant::normalized).matrix().to_dense();
    CHECK((norm - norm.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Vector ev = oracle::eig(norm).values;
    CHECK(ev.minCoeff() >= -1e-9);
    CHECK(ev.maxCoeff() <= 2.0 + 1e-9);
  }
}

TEST_CASE("signed Laplacian uses absolute degrees") {
  const Graph g = Graph::create(3, {{0, 1, -2.0}, {1, 2, 1.0}}, WeightSign::signed_weights);
  CHECK_THROWS_AS(build_laplacian(g), Error);
  const Laplacian l = build_laplacian(g, LaplacianVariant::signed_laplacian);
  const Matrix d = l.matrix().to_dense();
  CHECK(d(0, 0) == 2.0);
  CHECK(d(1, 1) == 3.0);
  CHECK(d(0, 1) == 2.0);
  CHECK(d(1, 2) == -1.0);
  CHECK(oracle::eig(d).values.minCoeff() >= -1e-9);
}

TEST_CASE("normalized Laplacian gives isolated nodes a zero row") {
  const Matrix d = build_laplacian(Graph::create(3, {{0, 1, 1.0}}), LaplacianVariant::normalized).matrix().to_dense();
  CHECK(d.row(2).isZero(0.0));
  CHECK(d(0, 0) == 1.0);
  CHECK(d(0, 1) == doctest::Approx(-1.0));
}

TEST_CASE("estimate_lambda_max applies the margin") {
  const LambdaMaxEstimate a = estimate_lambda_max(build_laplacian(p2()));
  CHECK(a.value == doctest::Approx(2.02).epsilon(1e-8));
  CHECK_FALSE(a.degenerate);
  const LambdaMaxEstimate b = estimate_lambda_max(build_laplacian(k3()));
  CHECK(b.value == doctest::Approx(3.03).epsilon(1e-8));
  const LambdaMaxEstimate c = estimate_lambda_max(build_laplacian(Graph::create(3, {})));
  CHECK(c.value == 1.0);
  CHECK(c.degenerate);
}

TEST_CASE("estimate_lambda_max upper-bounds the oracle spectrum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(30, 0.2, seed, true);
    const Laplacian l = build_laplacian(g);
    const double top = oracle::eig(oracle::laplacian(g)).values.maxCoeff();
    const LambdaMaxEstimate est = estimate_lambda_max(l);
    CHECK(est.value >= top);
    CHECK(est.value <= 1.01 * top * (1 + 1e-6) + 1e-12);
    CHECK(estimate_lambda_max(l).value == est.value);
  }
}

TEST_CASE("estimate_lambda_max falls back to Gershgorin on non-convergence") {
  const Graph g = oracle::random_graph(40, 0.2, 11, true);
  const Laplacian l = build_laplacian(g);
  PowerMethodOptions opt;
  opt.max_iters = 1;
  opt.tol = 1e-15;
  const LambdaMaxEstimate est = estimate_lambda_max(l, opt);
  CHECK_FALSE(est.converged);
  const Matrix d = oracle::laplacian(g);
  double bound = 0.0;
  for (Index i = 0; i < 40; ++i) bound = std::max(bound, d.row(i).cwiseAbs().sum());
  CHECK(est.value == doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("scale_laplacian") {
  const ScaledLaplacian s = scale_laplacian(build_laplacian(p2()), 2.0);
  const Matrix d = s.matrix().to_dense();
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == -1.0);
  CHECK(d(1, 1) == 0.0);

  const ScaledLaplacian z = scale_laplacian(build_laplacian(Graph::create(3, {})), 1.0);
  CHECK((z.matrix().to_dense() + Matrix::Identity(3, 3)).isZero(0.0));

  const Vector ev = oracle::eig(scale_laplacian(build_laplacian(k3()), 3.0).matrix().to_dense()).values;
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(1.0));

  CHECK_THROWS_AS(scale_laplacian(build_laplacian(p2()), 0.0), Error);
}

TEST_CASE("scaled spectrum lies in [-1, 1] with the estimated lambda_max") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(25, 0.3, 100 + seed, true);
    const Laplacian l = build_laplacian(g);
    const ScaledLaplacian s = scale_laplacian(l, estimate_lambda_max(l).value);
    const Vector ev = oracle::eig(s.matrix().to_dense()).values;
    CHECK(ev.minCoeff() >= -1.0 - 1e-9);
    CHECK(ev.maxCoeff() <= 1.0 + 1e-9);
    const Matrix expected = (2.0 / s.lambda_max()) * oracle::laplacian(g) - Matrix::Identity(25, 25);
    CHECK((s.matrix().to_dense() - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("eigendecompose small cases") {
  const SpectralBasis b = eigendecompose(build_laplacian(p2()));
  CHECK(b.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.eigenvalues()[1] == doctest::Approx(2.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(b.eigenvectors()(0, 0) == doctest::Approx(r));
  CHECK(b.eigenvectors()(1, 0) == doctest::Approx(r));
  CHECK(b.eigenvectors()(0, 1) == doctest::Approx(r));
  CHECK(b.eigenvectors()(1, 1) == doctest::Approx(-r));

  const SpectralBasis z = eigendecompose_dense(Matrix::Zero(2, 2));
  CHECK(z.eigenvalues().isZero(0.0));
  CHECK(z.eigenvectors().isIdentity(0.0));
}

TEST_CASE("eigendecompose invariants on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(16, 0.3, 200 + seed, true);
    const SpectralBasis b = eigendecompose(build_laplacian(g));
    const Matrix& u = b.eigenvectors();
    CHECK((u.transpose() * u - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-9);
    const Matrix rebuilt = u * b.eigenvalues().asDiagonal() * u.transpose();
    CHECK((rebuilt - oracle::laplacian(g)).cwiseAbs().maxCoeff() <= 1e-8);
    for (Index i = 1; i < 16; ++i) CHECK(b.eigenvalues()[i] >= b.eigenvalues()[i - 1]);
    CHECK(b.eigenvalues()[0] >= -1e-9);
    for (Index c = 0; c < 16; ++c) {
      Index first = 0;
      while (std::abs(u(first, c)) <= 1e-10) ++first;
      CHECK(u(first, c) > 0.0);
    }
  }
}

TEST_CASE("eigendecompose refuses graphs above the cap") {
  try {
    eigendecompose(build_laplacian(oracle::random_graph(10, 0.3, 1)), 8);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::oracle_unavailable);
    CHECK(std::string(e.what()).find("oracle unavailable at this size") != std::string::npos);
  }
}

TEST_CASE("component count matches the number of zero eigenvalues") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(20, 0.08, 300 + seed);
    const int c = oracle::components(g);
    CHECK(g.component_count() == c);
    const SpectralBasis b = eigendecompose(build_laplacian(g));
    int zeros = 0;
    for (Index i = 0; i < 20; ++i) zeros += b.eigenvalues()[i] < 1e-8 ? 1 : 0;
    CHECK(zeros == c);
    if (c == 1) CHECK(b.eigenvalues()[1] > 1e-8);
  }
}

TEST_CASE("gft round trip, Parseval and domain tags") {
  std::mt19937_64 rng(5);
  const SpectralBasis b = eigendecompose(build_laplacian(oracle::random_graph(8, 0.5, 7, true)));
  const BeliefVector u0(b.eigenvectors().col(0));
  const BeliefVector e0 = gft(b, u0, GftDirection::forward);
  CHECK(e0.domain() == Domain::spectral);
  CHECK((e0.values() - Vector::Unit(8, 0)).cwiseAbs().maxCoeff() <= 1e-12);

  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = oracle::gaussian(8, rng);
    const BeliefVector xh = gft(b, BeliefVector(x), GftDirection::forward);
    const BeliefVector back = gft(b, xh, GftDirection::inverse);
    CHECK(back.domain() == Domain::vertex);
    CHECK((back.values() - x).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(x.squaredNorm() - xh.values().squaredNorm()) <= 1e-12 * (1 + x.squaredNorm()));
  }
  CHECK_THROWS_AS(gft(b, BeliefVector(Vector::Ones(8), Domain::spectral), GftDirection::forward), Error);
  CHECK_THROWS_AS(gft(b, BeliefVector(Vector::Ones(8)), GftDirection::inverse), Error);
  Vector bad = Vector::Ones(8);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(BeliefVector{bad}, Error);
}

TEST_CASE("graph pipeline is deterministic") {
  const Graph a = oracle::random_graph(30, 0.2, 9, true);
  const Graph b = oracle::random_graph(30, 0.2, 9, true);
  CHECK(a == b);
  const Laplacian la = build_laplacian(a);
  const Laplacian lb = build_laplacian(b);
  CHECK(la.matrix() == lb.matrix());
  const SpectralBasis ba = eigendecompose(la);
  const SpectralBasis bb = eigendecompose(lb);
  CHECK((ba.eigenvalues().array() == bb.eigenvalues().array()).all());
  CHECK((ba.eigenvectors().array() == bb.eigenvectors().array()).all());
}

TEST_CASE("Graph::create validates invariants") {
  CHECK_THROWS_AS(Graph::create(2, {{0, 0, 1.0}}), Error);
  CHECK_THROWS_AS(Graph::create(2, {{0, 2, 1.0}}), Error);
  CHECK_THROWS_AS(Graph::create(2, {{0, 1, 0.0}}), Error);
  CHECK_THROWS_AS(Graph::create(2, {{0, 1, 1.0}, {1, 0, 1.0}}), Error);
  CHECK_THROWS_AS(Graph::create(2, {{0, 1, std::nan("")}}, WeightSign::signed_weights), Error);
  const Graph g = Graph::create(3, {{2, 0, 1.5}});
  CHECK(g.edges()[0] == Edge{0, 2, 1.5});
}

}
