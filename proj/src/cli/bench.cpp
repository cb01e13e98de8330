#include "snsr/cli/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "snsr/filter/chebyshev.hpp"
#include "snsr/filter/filter_io.hpp"

namespace snsr::cli {

Graph circulant_graph(Index n, int degree) {
  require(degree >= 2 && degree % 2 == 0 && degree < n, ErrorCode::invalid_argument,
          "circulant graph needs an even degree in [2, n)");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(degree / 2));
  for (Index i = 0; i < n; ++i) {
    for (int o = 1; o <= degree / 2; ++o) {
      const Index j = (i + o) % n;
      edges.push_back({std::min(i, j), std::max(i, j), 1.0});
    }
  }
  return Graph::create(n, std::move(edges));
}

namespace {

constexpr double kMinSampleMs = 20.0;

struct Workload {
  std::string sweep;
  std::size_t edges = 0;
  Index nodes = 0;
  ScaledLaplacian lt;
  ChebyshevFilter filter;
  int batch = 1;
  std::vector<double> times;
};

Workload make_workload(const std::string& sweep, const Graph& g, int order, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector theta(order + 1);
  for (auto& t : theta) t = gauss(rng);
  const Laplacian l = build_laplacian(g);
  ScaledLaplacian lt = scale_laplacian(l, estimate_lambda_max(l).value);
  ChebyshevFilter f(theta, lt.lambda_max());
  return {sweep, g.edge_count(), g.node_count(), std::move(lt), std::move(f), 1, {}};
}

// Mean milliseconds per cheb_apply over `w.batch` back-to-back calls.
double time_batch(const Workload& w, const Vector& x) {
  volatile double sink = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int b = 0; b < w.batch; ++b) sink = sink + cheb_apply(w.filter, w.lt, x).y[0];
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / w.batch;
}

}  // namespace

std::vector<ScalingRow> scaling_sweep(const ScalingConfig& config) {
  require(config.repeats >= 1 && config.doublings >= 1, ErrorCode::invalid_argument,
          "scaling sweep needs repeats >= 1 and doublings >= 1");
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(config.nodes);
  for (auto& v : x) v = gauss(rng);

  std::vector<Workload> work;
  for (int d = 0; d <= config.doublings; ++d) {
    work.push_back(make_workload("edges", circulant_graph(config.nodes, config.base_degree << d), config.base_order, rng));
  }
  const Graph fixed = circulant_graph(config.nodes, config.base_degree);
  for (int d = 0; d <= config.doublings; ++d) work.push_back(make_workload("order", fixed, config.base_order << d, rng));

  // Warm-up call sizes each batch to at least kMinSampleMs; repeats cycle round-robin.
  for (Workload& w : work) {
    const double single = time_batch(w, x);
    w.batch = std::max(1, static_cast<int>(std::ceil(kMinSampleMs / std::max(single, 1e-6))));
  }
  for (int r = 0; r < config.repeats; ++r) {
    for (Workload& w : work) w.times.push_back(time_batch(w, x));
  }

  std::vector<ScalingRow> rows;
  for (Workload& w : work) {
    std::sort(w.times.begin(), w.times.end());
    ScalingRow row{w.sweep, w.filter.order(), w.edges, w.nodes, w.times[w.times.size() / 2], 0.0};
    if (!rows.empty() && rows.back().sweep == row.sweep && rows.back().median_ms > 0.0) {
      row.ratio = row.median_ms / rows.back().median_ms;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
  std::string out = "sweep,order,edges,nodes,median_ms,time_ratio\n";
  for (const ScalingRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.sweep, r.order, r.edges, r.nodes, format_real(r.median_ms),
                       format_real(r.ratio));
  }
  return out;
}

}  // namespace snsr::cli
