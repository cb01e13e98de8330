#include "snsr/cli/commands.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "snsr/analysis/analysis.hpp"
#include "snsr/cli/bench.hpp"
#include "snsr/filter/filter_io.hpp"
#include "snsr/filter/rational.hpp"
#include "snsr/rules/logic.hpp"
#include "snsr/taskgen/evaluate.hpp"
#include "snsr/taskgen/task_io.hpp"

namespace snsr::cli {

namespace {

using nlohmann::json;

std::string path_param(const json& cfg, const char* key) {
  const std::string p = cfg.at(key).get<std::string>();
  require(!p.empty(), ErrorCode::invalid_argument, std::string("missing --") + key);
  return p;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> real_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& item : split(s, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::invalid_argument, std::string("malformed ") + what + " list entry '" + item + "'");
    }
  }
  return out;
}

PowerMethodOptions power_options(const json& cfg) {
  PowerMethodOptions p;
  p.seed = cfg.at("seed").get<std::uint64_t>();
  return p;
}

Graph load_graph_param(const json& cfg, const char* key, RunContext& ctx) {
  const std::string path = path_param(cfg, key);
  ctx.note_input(key, path);
  const bool is_signed = cfg.value("signed", false);
  return load_graph_file(path, is_signed ? WeightSign::signed_weights : WeightSign::unsigned_weights);
}

Laplacian laplacian_param(const Graph& g, const json& cfg) {
  return build_laplacian(g, laplacian_variant_from_string(cfg.at("variant").get<std::string>()));
}

Vector load_beliefs_param(const json& cfg, const char* key, Index n, RunContext& ctx) {
  const std::string path = path_param(cfg, key);
  ctx.note_input(key, path);
  return read_beliefs_file(path, n);
}

std::string bands_csv(const BandReport& r, const std::string& instance) {
  std::string out;
  const auto& edges = r.partition.edges();
  for (int b = 0; b < r.partition.band_count(); ++b) {
    out += fmt::format("{},{},{},{},{},{}\n", instance, b, format_real(edges[b]), format_real(edges[b + 1]),
                       format_real(r.energies[b]), format_real(r.fractions[b]));
  }
  return out;
}

constexpr const char* kBandsHeader = "instance,band,lower,upper,energy,fraction\n";

BandPartition equal_bands(double upper, int count) {
  require(count >= 1, ErrorCode::invalid_argument, "band count must be >= 1");
  std::vector<double> edges;
  for (int b = 0; b <= count; ++b) edges.push_back(upper * b / count);
  return BandPartition(std::move(edges));
}

// ---- fit ----

void cmd_fit(const json& cfg, RunContext& ctx, std::ostream& out) {
  const Graph g = load_graph_param(cfg, "graph", ctx);
  const Laplacian l = laplacian_param(g, cfg);
  const LambdaMaxEstimate est = estimate_lambda_max(l, power_options(cfg));
  const AnalyticResponse r = AnalyticResponse::parse(cfg.at("response").get<std::string>());
  const ChebyshevFilter f = fit_chebyshev(r, cfg.at("order").get<int>(), est.value, cfg.at("quadrature").get<int>());
  const double err = max_grid_error(f, r.as_function());
  ctx.write_output(cfg.at("out").get<std::string>(), filter_to_json_text(f));
  ctx.write_output("fit.csv", fmt::format("lambda_max,order,max_grid_error\n{},{},{}\n", format_real(est.value),
                                          f.order(), format_real(err)));
  out << "lambda_max " << format_real(est.value) << (est.degenerate ? " (degenerate)" : "") << '\n';
  out << "max_grid_error " << format_real(err) << '\n';
}

// ---- infer ----

void cmd_infer(const json& cfg, RunContext& ctx, std::ostream& out) {
  const Graph g = load_graph_param(cfg, "graph", ctx);
  const Laplacian l = laplacian_param(g, cfg);
  const LambdaMaxEstimate est = estimate_lambda_max(l, power_options(cfg));
  const ScaledLaplacian lt = scale_laplacian(l, est.value);
  const std::string filter_path = path_param(cfg, "filter");
  ctx.note_input("filter", filter_path);
  const ChebyshevFilter f = read_filter_file(filter_path);
  const Vector x = load_beliefs_param(cfg, "beliefs", g.node_count(), ctx);

  const Vector y = cheb_apply(f, lt, x).y;
  const std::string mode = cfg.at("mode").get<std::string>();
  require(mode == "hard" || mode == "soft", ErrorCode::invalid_argument, "--mode must be hard or soft");
  const double threshold = cfg.at("threshold").get<double>();
  const PredicateVector p = project_predicates(
      y, threshold, mode == "soft" ? std::optional<double>(cfg.at("temperature").get<double>()) : std::nullopt);
  std::string preds = "node,y,soft,hard\n";
  for (Index i = 0; i < g.node_count(); ++i) {
    preds += fmt::format("{},{},{},{}\n", i, format_real(y[i]), format_real(p.soft[i]), p.hard[i] ? 1 : 0);
  }

  const std::string prefix = cfg.at("atom_prefix").get<std::string>();
  std::vector<std::string> node_atoms;
  for (Index i = 0; i < g.node_count(); ++i) node_atoms.push_back(prefix + std::to_string(i));
  RuleBase rb = RuleBase::create({}, {});
  if (const std::string rb_path = cfg.at("rulebase").get<std::string>(); !rb_path.empty()) {
    ctx.note_input("rulebase", rb_path);
    rb = load_rule_base_file(rb_path, node_atoms);
  } else {
    rb = rb.with_atoms(node_atoms);
  }
  AtomSet facts;
  for (Index i = 0; i < g.node_count(); ++i) {
    if (p.hard[i]) facts.insert(node_atoms[i]);
  }
  std::string closure;
  for (const std::string& a : forward_chain(rb, facts)) closure += a + '\n';

  ctx.write_output("predicates.csv", preds);
  ctx.write_output("closure.txt", closure);
  if (g.node_count() <= cfg.at("basis_cap").get<Index>()) {
    const SpectralBasis basis = eigendecompose(l);
    const BandReport report = band_energy(basis, y, BandPartition::three_band(basis, est.value));
    ctx.write_output("bands.csv", kBandsHeader + bands_csv(report, "0"));
    for (int b = 0; b < report.partition.band_count(); ++b) {
      out << "band " << b << " energy " << format_real(report.energies[b]) << " fraction "
          << format_real(report.fractions[b]) << '\n';
    }
  }
}

// ---- train ----

void cmd_train(const json& cfg, RunContext& ctx, std::ostream& out) {
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  LossSpec loss;
  const std::string kind = cfg.at("loss").get<std::string>();
  require(kind == "squared_error" || kind == "cross_entropy", ErrorCode::invalid_argument,
          "--loss must be squared_error or cross_entropy");
  loss.kind = kind == "squared_error" ? LossKind::squared_error : LossKind::cross_entropy;
  loss.threshold = cfg.at("threshold").get<double>();
  loss.temperature = cfg.at("temperature").get<double>();
  loss.weights = {cfg.at("proof_weight").get<double>(), cfg.at("rule_consistency_weight").get<double>(),
                  cfg.at("transfer_weight").get<double>()};

  std::vector<TrainingSample> data;
  const std::string tasks_path = cfg.at("tasks").get<std::string>();
  if (!tasks_path.empty()) {
    ctx.note_input("tasks", tasks_path);
    for (const TaskInstance& t : read_tasks_file(tasks_path)) {
      const auto gc = GraphContext::make(build_laplacian(t.graph), t.graph.node_count() <= kDefaultOracleCap,
                                         power_options(cfg));
      TrainingSample s{gc, t.seed_beliefs, Vector(t.graph.node_count()), t.labels, t.allowed_bands, std::nullopt};
      for (Index i = 0; i < t.graph.node_count(); ++i) s.target[i] = t.labels[i] ? 1.0 : -1.0;
      data.push_back(std::move(s));
    }
  } else {
    const Graph g = load_graph_param(cfg, "graph", ctx);
    const auto gc = GraphContext::make(laplacian_param(g, cfg), true, power_options(cfg));
    const AnalyticResponse teacher = AnalyticResponse::parse(path_param(cfg, "teacher"));
    for (int s = 0; s < cfg.at("samples").get<int>(); ++s) {
      Vector x(g.node_count());
      for (auto& v : x) v = gauss(rng);
      const Vector target = dense_filter_apply(*gc->basis, teacher, x);
      data.push_back({gc, x, target, {}, {0}, std::nullopt});
    }
  }
  require(!data.empty(), ErrorCode::invalid_argument, "train: no training samples");

  TrainConfig tc;
  tc.learning_rate = cfg.at("learning_rate").get<double>();
  tc.epochs = cfg.at("epochs").get<int>();
  tc.seed = seed;
  tc.clip_norm = cfg.at("clip_norm").get<double>();
  tc.laplacian.enabled = cfg.at("learn_laplacian").get<bool>();
  tc.laplacian.reestimate_every = cfg.at("reestimate_every").get<int>();
  tc.augmentation.magnitude = cfg.at("augment_magnitude").get<double>();
  tc.augmentation.band = cfg.at("augment_band").get<int>();
  tc.augmentation.enabled = tc.augmentation.magnitude > 0.0;

  const int order = cfg.at("order").get<int>();
  const int stages = cfg.at("curriculum_stages").get<int>();
  if (stages > 0 && tc.epochs > 0) tc.curriculum = CurriculumSchedule::linear(order, tc.epochs, stages);
  const double lambda_max = data.front().graph->scaled.lambda_max();

  const std::string model = cfg.at("model").get<std::string>();
  if (model == "filter") {
    ChebyshevFilter init(Vector::Zero(order + 1), lambda_max);
    if (const std::string init_path = cfg.at("init").get<std::string>(); !init_path.empty()) {
      ctx.note_input("init", init_path);
      init = read_filter_file(init_path).resized(order).with_lambda_max(lambda_max);
    }
    const TrainResult r = train(init, data, loss, tc);
    ctx.write_output("filter.json", filter_to_json_text(r.filter));
    ctx.write_output("loss_history.csv", loss_history_csv(r.history));
    if (r.learned_laplacian) {
      const Matrix dense = r.learned_laplacian->matrix().to_dense();
      std::vector<Edge> edges;
      for (Index i = 0; i < dense.rows(); ++i) {
        for (Index j = i + 1; j < dense.cols(); ++j) {
          if (dense(i, j) < 0.0) edges.push_back({i, j, -dense(i, j)});
        }
      }
      std::ostringstream buf;
      write_edge_list(buf, Graph::create(static_cast<Index>(dense.rows()), std::move(edges)));
      ctx.write_output("learned_graph.txt", buf.str());
    }
    if (!r.history.empty()) {
      out << "initial_loss " << format_real(r.history.front().total) << "\nfinal_loss "
          << format_real(r.history.back().total) << '\n';
    }
  } else if (model == "mose") {
    std::vector<ChebyshevFilter> experts;
    for (int b = 0; b < cfg.at("experts").get<int>(); ++b) {
      Vector theta(order + 1);
      for (auto& v : theta) v = 0.01 * gauss(rng);
      experts.emplace_back(theta, lambda_max);
    }
    const MoSETrainResult r = train(MoSEModel::uniform(std::move(experts)), data, loss, tc);
    ctx.write_output("mose.json", mose_to_json(r.model).dump(2) + "\n");
    ctx.write_output("loss_history.csv", loss_history_csv(r.history));
    if (!r.history.empty()) {
      out << "initial_loss " << format_real(r.history.front().total) << "\nfinal_loss "
          << format_real(r.history.back().total) << '\n';
    }
  } else {
    throw Error(ErrorCode::invalid_argument, "--model must be filter or mose");
  }
}

// ---- gen ----

void cmd_gen(const json& cfg, RunContext& ctx, std::ostream& out) {
  const TaskKind kind = task_kind_from_string(cfg.at("kind").get<std::string>());
  const int count = cfg.at("count").get<int>();
  require(count >= 1, ErrorCode::invalid_argument, "--count must be >= 1");
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  std::vector<TaskInstance> tasks;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    switch (kind) {
      case TaskKind::community:
        tasks.push_back(gen_community_task({cfg.at("n").get<Index>(), cfg.at("intra_p").get<double>(),
                                            cfg.at("inter_p").get<double>(), cfg.at("seed_fraction").get<double>(),
                                            cfg.at("noise").get<double>()},
                                           s));
        break;
      case TaskKind::contradiction:
        tasks.push_back(gen_contradiction_task({cfg.at("n").get<Index>(), cfg.at("base_p").get<double>(),
                                                cfg.at("planted").get<Index>(), cfg.at("flip_magnitude").get<double>(),
                                                cfg.at("smooth_modes").get<int>()},
                                               s));
        break;
      case TaskKind::chain:
        tasks.push_back(gen_chain_task(
            {cfg.at("depth").get<int>(), cfg.at("branching").get<int>(), cfg.at("distractors").get<int>()}, s));
        break;
    }
  }
  ctx.write_output(cfg.at("out").get<std::string>(), tasks_to_text(tasks));
  out << "generated " << count << ' ' << to_string(kind) << " task(s)\n";
}

// ---- eval ----

Model parse_model(const std::string& spec, int order, RunContext& ctx) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "labels") return label_model(spec);
  if (head == "constant") return constant_model(spec, rest.empty() ? 0.0 : std::stod(rest));
  if (head == "response") return response_model(spec, AnalyticResponse::parse(rest), order);
  if (head == "oracle") return oracle_model(spec, AnalyticResponse::parse(rest));
  if (head == "rational") {
    const AnalyticResponse r = AnalyticResponse::parse("diffusion:" + rest);
    return rational_model(spec, r.tau());
  }
  if (head == "filter") {
    ctx.note_input("model", rest);
    return filter_model(spec, read_filter_file(rest));
  }
  if (head == "mose") {
    ctx.note_input("model", rest);
    return mose_model(spec, mose_from_json(json::parse(read_text_file(rest))));
  }
  throw Error(ErrorCode::invalid_argument, "unknown model spec '" + spec + "'");
}

void cmd_eval(const json& cfg, RunContext& ctx, std::ostream& out) {
  const std::string tasks_path = path_param(cfg, "tasks");
  ctx.note_input("tasks", tasks_path);
  const std::vector<TaskInstance> tasks = read_tasks_file(tasks_path);
  const Model model = parse_model(cfg.at("model").get<std::string>(), cfg.at("order").get<int>(), ctx);
  EvalConfig ec;
  ec.threshold = cfg.at("threshold").get<double>();
  ec.latency_repeats = cfg.at("latency_repeats").get<int>();
  const std::string task_set = std::filesystem::path(tasks_path).stem().string();
  const EvalReport report = evaluate(model, tasks, ec);
  ctx.write_output("eval.csv", eval_csv_header() + eval_csv_row(report, task_set));

  const std::vector<double> magnitudes = real_list(cfg.at("perturb_magnitudes").get<std::string>(), "magnitude");
  if (!magnitudes.empty()) {
    std::string curve = "band,magnitude,robustness_drop\n";
    for (double m : magnitudes) {
      const PerturbationConfig pc{cfg.at("perturb_band").get<int>(), m, cfg.at("perturb_seed").get<std::uint64_t>()};
      curve += fmt::format("{},{},{}\n", pc.band, format_real(m), format_real(robustness_drop(model, tasks, pc, ec)));
    }
    ctx.write_output("robustness.csv", curve);
  }
  out << "accuracy " << format_real(report.accuracy) << '\n';
  if (report.auc) out << "auc " << format_real(*report.auc) << '\n';
}

// ---- attribute ----

void cmd_attribute(const json& cfg, RunContext& ctx, std::ostream& out) {
  const Graph g = load_graph_param(cfg, "graph", ctx);
  const Laplacian l = laplacian_param(g, cfg);
  const LambdaMaxEstimate est = estimate_lambda_max(l, power_options(cfg));
  const SpectralBasis basis = eigendecompose(l);
  const Vector x = load_beliefs_param(cfg, "beliefs", g.node_count(), ctx);
  const BandPartition partition =
      equal_bands(std::max(est.value, basis.max_eigenvalue()), cfg.at("bands").get<int>());

  Vector y = x;
  std::optional<ChebyshevFilter> f;
  if (const std::string fp = cfg.at("filter").get<std::string>(); !fp.empty()) {
    ctx.note_input("filter", fp);
    f = read_filter_file(fp);
    y = cheb_apply(*f, scale_laplacian(l, est.value), x).y;
  }
  const BandReport report = band_energy(basis, y, partition);
  ctx.write_output("bands.csv", kBandsHeader + bands_csv(report, "0"));
  out << "dirichlet_energy " << format_real(dirichlet_energy(l, y)) << '\n';

  if (f) {
    const RobustnessCertificate cert = robustness_certificate(*f);
    ctx.write_output("certificate.csv", fmt::format("instance,lambda_max,grid_points,bound\n0,{},{},{}\n",
                                                    format_real(f->lambda_max()), cert.grid_points,
                                                    format_real(cert.bound)));
    out << "certificate " << format_real(cert.bound) << '\n';
    const double var = cfg.at("theta_variance").get<double>();
    if (var > 0.0) {
      const Vector variances = response_variance(basis, Vector::Constant(f->order() + 1, var), f->lambda_max());
      const SpectralCovariance cov = spectral_covariance(basis, variances, x);
      std::string csv = "index,eigenvalue,response_variance,output_variance\n";
      for (Index i = 0; i < basis.size(); ++i) {
        csv += fmt::format("{},{},{},{}\n", i, format_real(basis.eigenvalues()[i]), format_real(cov.variances[i]),
                           format_real(cov.diagonal_spectral[i]));
      }
      ctx.write_output("covariance.csv", csv);
      out << "covariance_trace " << format_real(cov.trace()) << '\n';
    }
  }
  for (int b = 0; b < partition.band_count(); ++b) {
    out << "band " << b << " fraction " << format_real(report.fractions[b]) << '\n';
  }
}

// ---- perturb ----

void cmd_perturb(const json& cfg, RunContext& ctx, std::ostream& out) {
  const Graph g = load_graph_param(cfg, "graph", ctx);
  const Laplacian l = laplacian_param(g, cfg);
  const LambdaMaxEstimate est = estimate_lambda_max(l, power_options(cfg));
  const SpectralBasis basis = eigendecompose(l);
  const Vector x = load_beliefs_param(cfg, "beliefs", g.node_count(), ctx);
  const BandPartition partition = BandPartition::three_band(basis, est.value);

  const Vector p = spectral_perturb(basis, x, cfg.at("band").get<int>(), cfg.at("magnitude").get<double>(),
                                    partition, cfg.at("seed").get<std::uint64_t>());
  ctx.write_output("perturbed.csv", beliefs_csv(p));
  out << "perturbation_norm " << format_real((p - x).norm()) << '\n';

  std::vector<BandEdit> edits;
  for (const std::string& item : split(cfg.at("edits").get<std::string>(), ',')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, ErrorCode::invalid_argument, "edits must look like band:gain");
    try {
      edits.push_back({std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::invalid_argument, "malformed edit '" + item + "'");
    }
  }
  if (!edits.empty()) ctx.write_output("edited.csv", beliefs_csv(spectral_edit(basis, x, edits, partition)));
}

// ---- transfer ----

void cmd_transfer(const json& cfg, RunContext& ctx, std::ostream& out) {
  const Graph gs = load_graph_param(cfg, "source_graph", ctx);
  const Graph gt = load_graph_param(cfg, "target_graph", ctx);
  const Laplacian ls = laplacian_param(gs, cfg);
  const Laplacian lt = laplacian_param(gt, cfg);
  const SpectralBasis bs = eigendecompose(ls);
  const SpectralBasis bt = eigendecompose(lt);
  const Vector xs = load_beliefs_param(cfg, "source_beliefs", gs.node_count(), ctx);
  const Vector xt = load_beliefs_param(cfg, "target_beliefs", gt.node_count(), ctx);
  const double lms = std::max(estimate_lambda_max(ls, power_options(cfg)).value, bs.max_eigenvalue());
  const double lmt = std::max(estimate_lambda_max(lt, power_options(cfg)).value, bt.max_eigenvalue());
  const double loss = cospectral_transfer_loss(bs, xs, lms, bt, xt, lmt);
  ctx.write_output("transfer.csv", fmt::format("source_nodes,target_nodes,resampled,loss\n{},{},{},{}\n",
                                               gs.node_count(), gt.node_count(),
                                               gs.node_count() != gt.node_count() ? 1 : 0, format_real(loss)));
  out << "cospectral_loss " << format_real(loss) << '\n';
}

// ---- bench ----

void cmd_bench(const json& cfg, RunContext& ctx, std::ostream& out) {
  ScalingConfig sc;
  sc.nodes = cfg.at("nodes").get<Index>();
  sc.base_degree = cfg.at("base_degree").get<int>();
  sc.base_order = cfg.at("base_order").get<int>();
  sc.doublings = cfg.at("doublings").get<int>();
  sc.repeats = cfg.at("repeats").get<int>();
  sc.seed = cfg.at("seed").get<std::uint64_t>();
  const std::vector<ScalingRow> rows = scaling_sweep(sc);
  ctx.write_output("scaling.csv", scaling_csv(rows));
  for (const ScalingRow& r : rows) {
    if (r.ratio > 0.0) out << r.sweep << " K=" << r.order << " |E|=" << r.edges << " ratio " << format_real(r.ratio) << '\n';
  }

  std::vector<TaskInstance> tasks;
  for (int i = 0; i < cfg.at("accuracy_instances").get<int>(); ++i) {
    CommunityParams p;
    p.n = cfg.at("n").get<Index>();
    tasks.push_back(gen_community_task(p, sc.seed + static_cast<std::uint64_t>(i)));
  }
  std::string table = "order,accuracy,latency_ms\n";
  if (!tasks.empty()) {
    for (double k : real_list(cfg.at("accuracy_orders").get<std::string>(), "order")) {
      const int order = static_cast<int>(k);
      const EvalReport r = evaluate(response_model(fmt::format("diffusion_K{}", order), AnalyticResponse::diffusion(1.0), order), tasks);
      table += fmt::format("{},{},{}\n", order, format_real(r.accuracy), format_real(r.latency_ms));
    }
  }
  ctx.write_output("accuracy_latency.csv", table);
}

json graph_defaults() {
  return {{"graph", ""}, {"variant", "combinatorial"}, {"signed", false}, {"seed", 0}};
}

json with(json base, const json& extra) {
  base.update(extra);
  return base;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"fit", "fit Chebyshev coefficients to an analytic response",
       with(graph_defaults(), {{"response", "identity"}, {"order", 16}, {"quadrature", 0}, {"out", "filter.json"}}),
       cmd_fit},
      {"infer", "filter beliefs, project predicates and close under a rule base",
       with(graph_defaults(), {{"filter", ""},
                               {"beliefs", ""},
                               {"rulebase", ""},
                               {"threshold", 0.5},
                               {"mode", "hard"},
                               {"temperature", 10.0},
                               {"atom_prefix", "node_"},
                               {"basis_cap", 2048}}),
       cmd_infer},
      {"train", "train a filter or expert mixture by gradient descent",
       with(graph_defaults(), {{"tasks", ""},
                               {"teacher", ""},
                               {"samples", 32},
                               {"order", 8},
                               {"model", "filter"},
                               {"experts", 3},
                               {"init", ""},
                               {"loss", "squared_error"},
                               {"threshold", 0.0},
                               {"temperature", 1.0},
                               {"proof_weight", 0.0},
                               {"rule_consistency_weight", 0.0},
                               {"transfer_weight", 0.0},
                               {"learning_rate", 0.05},
                               {"epochs", 100},
                               {"clip_norm", 10.0},
                               {"curriculum_stages", 0},
                               {"learn_laplacian", false},
                               {"reestimate_every", 10},
                               {"augment_band", 2},
                               {"augment_magnitude", 0.0}}),
       cmd_train},
      {"gen", "generate synthetic reasoning tasks",
       {{"kind", "community"},
        {"count", 1},
        {"seed", 0},
        {"n", 200},
        {"intra_p", 0.08},
        {"inter_p", 0.005},
        {"seed_fraction", 0.05},
        {"noise", 0.1},
        {"base_p", 0.05},
        {"planted", 10},
        {"flip_magnitude", 3.0},
        {"smooth_modes", 4},
        {"depth", 3},
        {"branching", 2},
        {"distractors", 0},
        {"out", "tasks.json"}},
       cmd_gen},
      {"eval", "evaluate a model on a task file",
       {{"tasks", ""},
        {"model", "rational:tau=1"},
        {"order", 16},
        {"threshold", 0.0},
        {"latency_repeats", 5},
        {"perturb_band", 2},
        {"perturb_magnitudes", ""},
        {"perturb_seed", 0}},
       cmd_eval},
      {"attribute", "band energy attribution, certificate and uncertainty",
       with(graph_defaults(), {{"beliefs", ""}, {"filter", ""}, {"bands", 3}, {"theta_variance", 0.0}}),
       cmd_attribute},
      {"perturb", "spectral perturbation and band editing",
       with(graph_defaults(), {{"beliefs", ""}, {"band", 2}, {"magnitude", 0.1}, {"edits", ""}}), cmd_perturb},
      {"transfer", "co-spectral transfer loss between two graphs",
       {{"source_graph", ""},
        {"source_beliefs", ""},
        {"target_graph", ""},
        {"target_beliefs", ""},
        {"variant", "combinatorial"},
        {"signed", false},
        {"seed", 0}},
       cmd_transfer},
      {"bench", "complexity scaling and accuracy-latency sweeps",
       {{"nodes", 50000},
        {"base_degree", 4},
        {"base_order", 8},
        {"doublings", 3},
        {"repeats", 9},
        {"seed", 0},
        {"n", 200},
        {"accuracy_instances", 5},
        {"accuracy_orders", "2,4,8,16"}},
       cmd_bench},
  };
  return specs;
}

}  // namespace snsr::cli
