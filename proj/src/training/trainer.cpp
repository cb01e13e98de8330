#include "snsr/training/trainer.hpp"

#include <cmath>
#include <sstream>

#include "snsr/analysis/analysis.hpp"
#include "snsr/filter/filter_io.hpp"

namespace snsr {

std::shared_ptr<const GraphContext> GraphContext::make(const Laplacian& l, bool with_basis,
                                                       const PowerMethodOptions& power) {
  const LambdaMaxEstimate est = estimate_lambda_max(l, power);
  std::optional<SpectralBasis> basis;
  if (with_basis) basis = eigendecompose(l);
  BandPartition partition =
      basis ? BandPartition::three_band(*basis, est.value) : BandPartition::three_band(est.value);
  return std::make_shared<const GraphContext>(
      GraphContext{l, scale_laplacian(l, est.value), est, std::move(basis), std::move(partition)});
}

const SpectralBasis& GraphContext::require_basis(const char* context) const {
  require(basis.has_value(), ErrorCode::oracle_unavailable,
          std::string(context) + ": needs a dense eigenbasis for this graph");
  return *basis;
}

void LossSpec::validate() const {
  for (double w : {weights.proof, weights.rule_consistency, weights.transfer}) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::invalid_argument,
            "penalty weights must be finite and >= 0");
  }
  require(std::isfinite(threshold), ErrorCode::invalid_argument, "loss threshold must be finite");
  require(std::isfinite(temperature) && temperature > 0.0, ErrorCode::invalid_argument,
          "loss temperature must be positive");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"learning_rate", learning_rate},
          {"epochs", epochs},
          {"seed", seed},
          {"clip_norm", clip_norm},
          {"curriculum", curriculum.to_json()},
          {"learn_laplacian", laplacian.enabled},
          {"reestimate_every", laplacian.reestimate_every},
          {"augmentation",
           {{"enabled", augmentation.enabled},
            {"band", augmentation.band},
            {"magnitude", augmentation.magnitude}}}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  try {
    TrainConfig c;
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.epochs = j.value("epochs", c.epochs);
    c.seed = j.value("seed", c.seed);
    c.clip_norm = j.value("clip_norm", c.clip_norm);
    if (j.contains("curriculum")) c.curriculum = CurriculumSchedule::from_json(j.at("curriculum"));
    c.laplacian.enabled = j.value("learn_laplacian", false);
    c.laplacian.reestimate_every = j.value("reestimate_every", c.laplacian.reestimate_every);
    if (j.contains("augmentation")) {
      const auto& a = j.at("augmentation");
      c.augmentation.enabled = a.value("enabled", false);
      c.augmentation.band = a.value("band", c.augmentation.band);
      c.augmentation.magnitude = a.value("magnitude", c.augmentation.magnitude);
    }
    require(std::isfinite(c.learning_rate) && c.learning_rate >= 0.0, ErrorCode::invalid_argument,
            "learning_rate must be >= 0");
    require(c.epochs >= 0, ErrorCode::invalid_argument, "epochs must be >= 0");
    require(c.laplacian.reestimate_every >= 1, ErrorCode::invalid_argument,
            "reestimate_every must be >= 1");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed training config: ") + e.what());
  }
}

std::string loss_history_csv(const std::vector<LossRecord>& history) {
  std::ostringstream out;
  out << "epoch,total,data_term,proof_penalty,rule_consistency,transfer\n";
  for (const LossRecord& r : history) {
    out << r.epoch << ',' << format_real(r.total) << ',' << format_real(r.data_term) << ','
        << format_real(r.proof_penalty) << ',' << format_real(r.rule_consistency) << ','
        << format_real(r.transfer) << '\n';
  }
  return out.str();
}

namespace {

double log_sigmoid(double z) { return z >= 0.0 ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double data_loss(const LossSpec& loss, const TrainingSample& s, const Vector& y, Vector* grad) {
  const auto n = y.size();
  if (loss.kind == LossKind::squared_error) {
    require_same_size(s.target.size(), n, "squared_error target");
    const Vector r = y - s.target;
    if (grad) *grad = r;
    return 0.5 * r.squaredNorm();
  }
  require(static_cast<Eigen::Index>(s.labels.size()) == n, ErrorCode::dimension_mismatch,
          "cross_entropy labels: dimension mismatch");
  double total = 0.0;
  if (grad) grad->resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = loss.temperature * (y[i] - loss.threshold);
    const double l = s.labels[i] ? 1.0 : 0.0;
    total -= l * log_sigmoid(z) + (1.0 - l) * log_sigmoid(-z);
    if (grad) (*grad)[i] = loss.temperature * (sigmoid(z) - l) / static_cast<double>(n);
  }
  return total / static_cast<double>(n);
}

namespace {

struct SampleTerms {
  double data = 0.0;
  double proof = 0.0;
  double transfer = 0.0;
  Vector grad_y;
};

// Loss terms of one output and the gradient of the weighted per-sample loss.
SampleTerms sample_terms(const LossSpec& loss, const TrainingSample& s, const GraphContext& ctx,
                         const SpectralBasis* basis, const Vector& y) {
  SampleTerms t;
  t.data = data_loss(loss, s, y, &t.grad_y);
  if (loss.weights.proof > 0.0) {
    require(basis != nullptr, ErrorCode::oracle_unavailable, "proof penalty needs a dense eigenbasis");
    t.proof = proof_guided_penalty(y, *basis, ctx.partition, s.allowed_bands);
    t.grad_y += loss.weights.proof * proof_guided_penalty_gradient(y, *basis, ctx.partition, s.allowed_bands);
  }
  if (loss.weights.transfer > 0.0 && s.transfer_reference) {
    require(basis != nullptr, ErrorCode::oracle_unavailable, "transfer penalty needs a dense eigenbasis");
    const Vector& ref = *s.transfer_reference;
    const Vector yhat = basis->forward(y);
    Vector dhat;
    if (ref.size() == yhat.size()) {
      dhat = 2.0 * (yhat - ref);
      t.transfer = (yhat - ref).squaredNorm();
    } else {
      require(ref.size() == kTransferGrid, ErrorCode::dimension_mismatch,
              "transfer reference must have N or " + std::to_string(kTransferGrid) + " entries");
      const double upper = ctx.partition.upper();
      const Vector profile = resample_spectrum(basis->eigenvalues(), yhat, upper);
      t.transfer = (profile - ref).squaredNorm();
      dhat = Vector::Zero(yhat.size());
      for (Eigen::Index i = 0; i < yhat.size(); ++i) {
        const int g = transfer_slot(basis->eigenvalues()[i], upper);
        if (profile[g] > 0.0) dhat[i] = 2.0 * (profile[g] - ref[g]) * yhat[i] / profile[g];
      }
    }
    t.grad_y += loss.weights.transfer * basis->inverse(dhat);
  }
  return t;
}

Vector series_output(const RecurrenceTrace& trace, const Vector& theta) {
  Vector y = Vector::Zero(trace.basis_vectors.front().size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) y += theta[k] * trace.basis_vectors[k];
  return y;
}

std::uint64_t mix_seed(std::uint64_t seed, int epoch, std::size_t sample) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(epoch) + 1) +
                    0xBF58476D1CE4E5B9ULL * (static_cast<std::uint64_t>(sample) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector sample_input(const TrainingSample& s, const TrainConfig& config, int epoch, std::size_t index) {
  if (!config.augmentation.enabled || config.augmentation.magnitude == 0.0) return s.x;
  const SpectralBasis& basis = s.graph->require_basis("augmentation");
  return spectral_perturb(basis, s.x, config.augmentation.band, config.augmentation.magnitude,
                          s.graph->partition, mix_seed(config.seed, epoch, index));
}

void check_data(const std::vector<TrainingSample>& data, const LossSpec& loss, const TrainConfig& config) {
  loss.validate();
  require(!data.empty(), ErrorCode::invalid_argument, "train: empty data set");
  require(std::isfinite(config.learning_rate) && config.learning_rate >= 0.0,
          ErrorCode::invalid_argument, "learning_rate must be >= 0");
  require(config.epochs >= 0, ErrorCode::invalid_argument, "epochs must be >= 0");
  for (const TrainingSample& s : data) {
    require(s.graph != nullptr, ErrorCode::invalid_argument, "training sample without a graph");
    require_same_size(s.x.size(), s.graph->laplacian.size(), "training sample");
    require(s.x.allFinite(), ErrorCode::invalid_argument, "training inputs must be finite");
  }
}

void record_or_throw(std::vector<LossRecord>& history, LossRecord r) {
  if (!std::isfinite(r.total)) {
    throw Error(ErrorCode::divergence, "training diverged at epoch " + std::to_string(r.epoch));
  }
  history.push_back(r);
}

double clip_scale(double norm, double clip) {
  return (clip > 0.0 && norm > clip) ? clip / norm : 1.0;
}

}  // namespace

TrainResult train(const ChebyshevFilter& init, const std::vector<TrainingSample>& data,
                  const LossSpec& loss, const TrainConfig& config) {
  check_data(data, loss, config);
  const int order = init.order();
  config.curriculum.validate(order);
  Vector theta = init.theta();
  const auto samples = static_cast<double>(data.size());

  const bool learn_l = config.laplacian.enabled;
  Matrix l_dense;
  double lambda = init.lambda_max();
  if (learn_l) {
    const GraphContext* shared = data.front().graph.get();
    for (const TrainingSample& s : data) {
      require(s.graph.get() == shared, ErrorCode::invalid_argument,
              "Laplacian learning needs every sample on one graph");
    }
    require(shared->laplacian.size() <= 128, ErrorCode::oracle_unavailable,
            "Laplacian learning runs on the dense path (N <= 128)");
    l_dense = shared->laplacian.matrix().to_dense();
    lambda = shared->scaled.lambda_max();
  }
  require(!learn_l || loss.weights.rule_consistency == 0.0 || config.laplacian.rule_target,
          ErrorCode::invalid_argument, "rule-consistency weight set without a target spectrum");

  std::vector<LossRecord> history;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<bool> mask = curriculum_mask(config.curriculum, epoch, order);

    // Current graph state: either the samples' own contexts or the learned L.
    std::shared_ptr<const GraphContext> learned;
    if (learn_l) {
      const Laplacian current = laplacian_from_dense(l_dense);
      const bool need_basis = data.front().graph->basis.has_value() || loss.weights.rule_consistency > 0.0;
      std::optional<SpectralBasis> basis;
      if (need_basis) basis = eigendecompose(current);
      BandPartition partition =
          basis ? BandPartition::three_band(*basis, lambda) : BandPartition::three_band(lambda);
      learned = std::make_shared<const GraphContext>(GraphContext{
          current, scale_laplacian(current, lambda), {lambda, false, true, 0}, std::move(basis), std::move(partition)});
    }

    LossRecord rec{epoch, 0, 0, 0, 0, 0};
    Vector g_theta = Vector::Zero(order + 1);
    Matrix g_lt;
    if (learn_l) g_lt = Matrix::Zero(l_dense.rows(), l_dense.cols());

    for (std::size_t idx = 0; idx < data.size(); ++idx) {
      const TrainingSample& s = data[idx];
      const GraphContext& ctx = learn_l ? *learned : *s.graph;
      const Vector x = sample_input(s, config, epoch, idx);
      const RecurrenceTrace trace = chebyshev_trace(ctx.scaled, x, order);
      const Vector y = series_output(trace, theta);
      const SpectralBasis* basis = ctx.basis ? &*ctx.basis : nullptr;
      const SampleTerms t = sample_terms(loss, s, ctx, basis, y);
      rec.data_term += t.data / samples;
      rec.proof_penalty += t.proof / samples;
      rec.transfer += t.transfer / samples;
      g_theta += grad_theta(t.grad_y, trace) / samples;
      if (learn_l && theta.allFinite()) {
        g_lt += grad_scaled_laplacian(t.grad_y, trace, ChebyshevFilter(theta, lambda), ctx.scaled) / samples;
      }
    }
    Matrix g_l;
    if (learn_l) {
      g_l = (2.0 / lambda) * g_lt;
      if (config.laplacian.rule_target && loss.weights.rule_consistency > 0.0) {
        const SpectralBasis& b = learned->require_basis("rule consistency");
        rec.rule_consistency = rule_consistency_penalty(b, *config.laplacian.rule_target);
        g_l += loss.weights.rule_consistency * rule_consistency_gradient(b, *config.laplacian.rule_target);
      }
    }
    rec.total = rec.data_term + loss.weights.proof * rec.proof_penalty +
                loss.weights.transfer * rec.transfer + loss.weights.rule_consistency * rec.rule_consistency;
    record_or_throw(history, rec);

    for (int k = 0; k <= order; ++k) {
      if (!mask[k]) g_theta[k] = 0.0;
    }
    double sq = g_theta.squaredNorm();
    if (learn_l) sq += g_l.squaredNorm();
    const double scale = clip_scale(std::sqrt(sq), config.clip_norm);
    theta -= config.learning_rate * scale * g_theta;
    if (learn_l) {
      l_dense = project_laplacian_dense(l_dense - config.learning_rate * scale * g_l);
      if ((epoch + 1) % config.laplacian.reestimate_every == 0) {
        const LambdaMaxEstimate est = estimate_lambda_max(laplacian_from_dense(l_dense));
        lambda = est.value;
      }
    }
    if (!theta.allFinite() || (learn_l && !l_dense.allFinite())) {
      throw Error(ErrorCode::divergence, "training diverged at epoch " + std::to_string(epoch));
    }
  }

  TrainResult result{ChebyshevFilter(theta, lambda), std::nullopt, std::move(history)};
  if (learn_l) result.learned_laplacian = laplacian_from_dense(l_dense);
  return result;
}

MoSETrainResult train(const MoSEModel& init, const std::vector<TrainingSample>& data,
                      const LossSpec& loss, const TrainConfig& config) {
  check_data(data, loss, config);
  init.validate();
  require(!config.laplacian.enabled, ErrorCode::invalid_argument,
          "Laplacian learning is not supported for MoSE models");
  const int order = init.max_order();
  config.curriculum.validate(order);
  const int experts = init.expert_count();
  const auto samples = static_cast<double>(data.size());

  std::vector<Vector> thetas;
  for (const auto& e : init.experts) thetas.push_back(e.theta());
  Matrix w = init.gating_weights;

  std::vector<Vector> features;
  for (const TrainingSample& s : data) {
    features.push_back(s.graph->basis ? gating_features(*s.graph->basis, s.x)
                                      : gating_features(s.graph->scaled, s.x));
    require_same_size(features.back().size(), w.cols(), "MoSE gating features");
  }

  std::vector<LossRecord> history;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<bool> mask = curriculum_mask(config.curriculum, epoch, order);
    LossRecord rec{epoch, 0, 0, 0, 0, 0};
    std::vector<Vector> g_thetas;
    for (const Vector& t : thetas) g_thetas.push_back(Vector::Zero(t.size()));
    Matrix g_w = Matrix::Zero(w.rows(), w.cols());

    for (std::size_t idx = 0; idx < data.size(); ++idx) {
      const TrainingSample& s = data[idx];
      const GraphContext& ctx = *s.graph;
      const Vector x = sample_input(s, config, epoch, idx);
      const RecurrenceTrace trace = chebyshev_trace(ctx.scaled, x, order);
      const Vector alpha = softmax(w * features[idx]);
      std::vector<Vector> outputs;
      Vector y = Vector::Zero(x.size());
      for (int b = 0; b < experts; ++b) {
        outputs.push_back(series_output(trace, thetas[b]));
        y += alpha[b] * outputs.back();
      }
      const SpectralBasis* basis = ctx.basis ? &*ctx.basis : nullptr;
      const SampleTerms t = sample_terms(loss, s, ctx, basis, y);
      rec.data_term += t.data / samples;
      rec.proof_penalty += t.proof / samples;
      rec.transfer += t.transfer / samples;

      const Vector g_shared = grad_theta(t.grad_y, trace);
      Vector g_alpha(experts);
      for (int b = 0; b < experts; ++b) {
        g_thetas[b] += alpha[b] * g_shared.head(thetas[b].size()) / samples;
        g_alpha[b] = t.grad_y.dot(outputs[b]);
      }
      const Vector g_logits = alpha.cwiseProduct((g_alpha.array() - alpha.dot(g_alpha)).matrix());
      g_w += g_logits * features[idx].transpose() / samples;
    }
    rec.total = rec.data_term + loss.weights.proof * rec.proof_penalty + loss.weights.transfer * rec.transfer;
    record_or_throw(history, rec);

    double sq = g_w.squaredNorm();
    for (auto& g : g_thetas) {
      for (Eigen::Index k = 0; k < g.size(); ++k) {
        if (!mask[k]) g[k] = 0.0;
      }
      sq += g.squaredNorm();
    }
    const double scale = clip_scale(std::sqrt(sq), config.clip_norm);
    for (int b = 0; b < experts; ++b) thetas[b] -= config.learning_rate * scale * g_thetas[b];
    w -= config.learning_rate * scale * g_w;
    bool finite = w.allFinite();
    for (const auto& t : thetas) finite = finite && t.allFinite();
    if (!finite) throw Error(ErrorCode::divergence, "training diverged at epoch " + std::to_string(epoch));
  }

  MoSEModel model = init;
  for (int b = 0; b < experts; ++b) model.experts[b] = init.experts[b].with_theta(thetas[b]);
  model.gating_weights = w;
  return {std::move(model), std::move(history)};
}

}  // namespace snsr
