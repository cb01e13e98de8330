#include "snsr/taskgen/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "snsr/analysis/analysis.hpp"
#include "snsr/filter/filter_io.hpp"
#include "snsr/filter/rational.hpp"
#include "snsr/parallel.hpp"
#include "snsr/rules/logic.hpp"

namespace snsr {

Model response_model(const std::string& name, const AnalyticResponse& r, int order) {
  return {name, [r, order](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            const ChebyshevFilter f = fit_chebyshev(r, order, ctx.scaled.lambda_max());
            return cheb_apply(f, ctx.scaled, x).y;
          }};
}

Model filter_model(const std::string& name, const ChebyshevFilter& f) {
  return {name, [f](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            return cheb_apply(f.with_lambda_max(ctx.scaled.lambda_max()), ctx.scaled, x).y;
          }};
}

Model rational_model(const std::string& name, double tau) {
  return {name, [tau](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            return rational_apply(tau, ctx.laplacian, x);
          }};
}

Model oracle_model(const std::string& name, const AnalyticResponse& r) {
  return {name, [r](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            return dense_filter_apply(ctx.require_basis("oracle model"), r, x);
          }};
}

Model label_model(const std::string& name) {
  return {name, [](const GraphContext&, const TaskInstance& t, const Vector&) {
            // Negatives are 0 on contradiction tasks, -1 elsewhere.
            const double negative = t.kind == TaskKind::contradiction ? 0.0 : -1.0;
            Vector y(static_cast<Eigen::Index>(t.labels.size()));
            for (std::size_t i = 0; i < t.labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = t.labels[i] ? 1.0 : negative;
            return y;
          }};
}

Model constant_model(const std::string& name, double value) {
  return {name, [value](const GraphContext&, const TaskInstance&, const Vector& x) {
            return Vector::Constant(x.size(), value);
          }};
}

namespace {

MoSEModel at_scale(const MoSEModel& m, double lambda_max) {
  MoSEModel out = m;
  for (auto& e : out.experts) e = e.with_lambda_max(lambda_max);
  return out;
}

Vector features_for(const GraphContext& ctx, const Vector& x) {
  return ctx.basis ? gating_features(*ctx.basis, x) : gating_features(ctx.scaled, x);
}

}  // namespace

Model mose_model(const std::string& name, const MoSEModel& m) {
  m.validate();
  return {name, [m](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            return mose_apply(at_scale(m, ctx.scaled.lambda_max()), ctx.scaled, x, features_for(ctx, x));
          }};
}

Model allocated_mose_model(const std::string& name, const MoSEModel& m, const AllocationConfig& config) {
  m.validate();
  config.validate();
  return {name, [m, config](const GraphContext& ctx, const TaskInstance&, const Vector& x) {
            const MoSEModel scaled = at_scale(m, ctx.scaled.lambda_max());
            const Vector features = features_for(ctx, x);
            const ChebyshevFilter pooled = pooled_filter(scaled, mose_gate(scaled, features));
            const double difficulty = allocation_difficulty(pooled, ctx.scaled, x, std::max(1, config.k_min));
            const auto [order, experts] = dynamic_allocate(difficulty, config);
            return mose_apply_budget(scaled, ctx.scaled, x, features, order, experts);
          }};
}

double rank_auc(const Vector& scores, const std::vector<bool>& labels) {
  require(static_cast<Eigen::Index>(labels.size()) == scores.size(), ErrorCode::dimension_mismatch,
          "rank_auc: dimension mismatch");
  double wins = 0.0;
  double pairs = 0.0;
  for (Eigen::Index p = 0; p < scores.size(); ++p) {
    if (!labels[p]) continue;
    for (Eigen::Index q = 0; q < scores.size(); ++q) {
      if (labels[q]) continue;
      wins += scores[p] > scores[q] ? 1.0 : (scores[p] == scores[q] ? 0.5 : 0.0);
      pairs += 1.0;
    }
  }
  require(pairs > 0.0, ErrorCode::invalid_argument, "rank_auc needs positive and negative labels");
  return wins / pairs;
}

std::vector<bool> chain_prediction(const TaskInstance& t, const Vector& y, double threshold) {
  require(t.rulebase.has_value(), ErrorCode::invalid_argument, "chain task without a rule base");
  const PredicateVector p = project_predicates(y, threshold);
  AtomSet facts;
  for (const auto& [node, atom] : t.atom_map) {
    if (p.hard[node]) facts.insert(atom);
  }
  const AtomSet closure = forward_chain(*t.rulebase, facts);
  std::vector<bool> predicted(t.labels.size(), false);
  for (const auto& [node, atom] : t.atom_map) predicted[node] = closure.count(atom) > 0;
  return predicted;
}

double instance_accuracy(const TaskInstance& t, const Vector& y, double threshold) {
  require(static_cast<Eigen::Index>(t.labels.size()) == y.size(), ErrorCode::dimension_mismatch,
          "model output does not match the instance size");
  const auto n = static_cast<std::size_t>(y.size());
  switch (t.kind) {
    case TaskKind::community: {
      const PredicateVector p = project_predicates(y, threshold);
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) hits += p.hard[i] == t.labels[i] ? 1 : 0;
      return static_cast<double>(hits) / static_cast<double>(n);
    }
    case TaskKind::contradiction: {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return std::abs(y[a]) > std::abs(y[b]); });
      std::vector<bool> predicted(n, false);
      for (int k = 0; k < t.positives(); ++k) predicted[order[k]] = true;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) hits += predicted[i] == t.labels[i] ? 1 : 0;
      return static_cast<double>(hits) / static_cast<double>(n);
    }
    case TaskKind::chain: {
      const std::vector<bool> predicted = chain_prediction(t, y, threshold);
      double tp = 0.0;
      double fp = 0.0;
      double fn = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        tp += predicted[i] && t.labels[i];
        fp += predicted[i] && !t.labels[i];
        fn += !predicted[i] && t.labels[i];
      }
      if (tp + fp + fn == 0.0) return 1.0;
      return 2.0 * tp / (2.0 * tp + fp + fn);
    }
  }
  return 0.0;
}

namespace {

std::shared_ptr<const GraphContext> context_for(const TaskInstance& t, Index cap) {
  const LaplacianVariant variant =
      t.graph.has_negative_weights() ? LaplacianVariant::signed_laplacian : LaplacianVariant::combinatorial;
  return GraphContext::make(build_laplacian(t.graph, variant), t.graph.node_count() <= cap);
}

Vector perturbed_input(const GraphContext& ctx, const TaskInstance& t, const PerturbationConfig& p,
                       std::size_t index) {
  if (p.magnitude == 0.0) return t.seed_beliefs;
  return spectral_perturb(ctx.require_basis("perturbation"), t.seed_beliefs, p.band, p.magnitude,
                          ctx.partition, p.seed + index);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct InstanceResult {
  double accuracy = 0.0;
  double perturbed_accuracy = 0.0;
  std::vector<double> timings;
  std::optional<BandReport> bands;
  std::optional<double> auc;
};

}  // namespace

EvalReport evaluate(const Model& model, const std::vector<TaskInstance>& instances, const EvalConfig& config) {
  require(!instances.empty(), ErrorCode::invalid_argument, "evaluate: empty instance list");
  require(config.latency_repeats >= 1, ErrorCode::invalid_argument, "latency_repeats must be >= 1");
  std::vector<InstanceResult> results(instances.size());

  parallel_for(instances.size(), [&](std::size_t idx) {
    const TaskInstance& t = instances[idx];
    const auto ctx = context_for(t, config.basis_cap);
    InstanceResult& r = results[idx];
    Vector y;
    for (int rep = 0; rep < config.latency_repeats; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      Vector out = model.apply(*ctx, t, t.seed_beliefs);
      const auto stop = std::chrono::steady_clock::now();
      r.timings.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      if (rep == 0) y = std::move(out);
    }
    require(y.allFinite(), ErrorCode::invalid_argument, "model '" + model.name + "' produced non-finite output");
    r.accuracy = instance_accuracy(t, y, config.threshold);
    r.perturbed_accuracy = r.accuracy;
    if (config.perturbation) {
      const Vector xp = perturbed_input(*ctx, t, *config.perturbation, idx);
      r.perturbed_accuracy = instance_accuracy(t, model.apply(*ctx, t, xp), config.threshold);
    }
    if (ctx->basis) r.bands = band_energy(*ctx->basis, y, ctx->partition);
    if (t.kind == TaskKind::contradiction && !t.degenerate && t.positives() > 0 &&
        t.positives() < static_cast<int>(t.labels.size())) {
      r.auc = rank_auc(y.cwiseAbs(), t.labels);
    }
  });

  EvalReport report;
  report.model = model.name;
  report.instances = static_cast<int>(instances.size());
  std::vector<double> timings;
  std::vector<double> perturbed;
  std::vector<double> aucs;
  std::vector<std::pair<BandReport, BandSet>> band_reports;
  report.band_fractions = Vector::Zero(3);
  int band_count = 0;
  for (std::size_t idx = 0; idx < results.size(); ++idx) {
    const InstanceResult& r = results[idx];
    report.per_instance.push_back(r.accuracy);
    perturbed.push_back(r.perturbed_accuracy);
    timings.insert(timings.end(), r.timings.begin(), r.timings.end());
    if (r.auc) aucs.push_back(*r.auc);
    if (r.bands) {
      band_reports.emplace_back(*r.bands, instances[idx].allowed_bands);
      if (!r.bands->degenerate && r.bands->fractions.size() == 3) {
        report.band_fractions += r.bands->fractions;
        ++band_count;
      }
    }
  }
  if (band_count > 0) report.band_fractions /= band_count;
  report.accuracy = mean(report.per_instance);
  report.latency_ms = median(timings);
  report.robustness_drop = 100.0 * (report.accuracy - mean(perturbed));
  if (!aucs.empty()) report.auc = mean(aucs);
  const bool any_energy = std::any_of(band_reports.begin(), band_reports.end(),
                                      [](const auto& p) { return !p.first.degenerate; });
  report.proof_band_agreement = any_energy ? proof_band_agreement(band_reports) : 0.0;
  return report;
}

double robustness_drop(const Model& model, const std::vector<TaskInstance>& instances,
                       const PerturbationConfig& perturbation, const EvalConfig& config) {
  EvalConfig c = config;
  c.perturbation = perturbation;
  c.latency_repeats = 1;
  return evaluate(model, instances, c).robustness_drop;
}

std::string eval_csv_header() {
  return "model,task_set,instances,accuracy,auc,robustness_drop,proof_band_agreement,"
         "band_low,band_mid,band_high,latency_ms\n";
}

std::string eval_csv_row(const EvalReport& r, const std::string& task_set) {
  std::ostringstream out;
  out << r.model << ',' << task_set << ',' << r.instances << ',' << format_real(r.accuracy) << ','
      << (r.auc ? format_real(*r.auc) : std::string()) << ',' << format_real(r.robustness_drop) << ','
      << format_real(r.proof_band_agreement);
  for (Eigen::Index b = 0; b < 3; ++b) {
    out << ',' << format_real(b < r.band_fractions.size() ? r.band_fractions[b] : 0.0);
  }
  out << ',' << format_real(r.latency_ms) << '\n';
  return out.str();
}

}  // namespace snsr
