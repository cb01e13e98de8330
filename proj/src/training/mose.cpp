#include "snsr/training/mose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace snsr {

std::vector<std::string> default_feature_names() {
  return {"energy_per_node", "low_fraction", "mid_fraction", "high_fraction", "log_nodes"};
}

namespace {

Vector assemble_features(double energy, const Vector& bands, Eigen::Index n) {
  Vector f(kGatingFeatureCount);
  const double total = bands.sum();
  f[0] = energy / static_cast<double>(n);
  for (int b = 0; b < 3; ++b) f[1 + b] = total > 0.0 ? bands[b] / total : 0.0;
  f[4] = std::log(static_cast<double>(n));
  return f;
}

}  // namespace

Vector gating_features(const SpectralBasis& basis, const Vector& x) {
  require_same_size(x.size(), basis.size(), "gating_features");
  const BandReport report = band_energy(basis, x, BandPartition::three_band(basis, 1.0));
  return assemble_features(x.squaredNorm(), report.energies, x.size());
}

Vector gating_features(const ScaledLaplacian& lt, const Vector& x, int order) {
  require_same_size(x.size(), lt.size(), "gating_features");
  const double lmax = lt.lambda_max();
  Vector bands(3);
  for (int b = 0; b < 3; ++b) {
    const double lo = lmax * b / 3.0;
    const double hi = lmax * (b + 1) / 3.0;
    const bool last = b == 2;
    const ChebyshevFilter f = fit_chebyshev(
        [=](double l) { return (l >= lo && (l < hi || last)) ? 1.0 : 0.0; }, order, lmax);
    bands[b] = std::max(0.0, x.dot(cheb_apply(f, lt, x).y));
  }
  return assemble_features(x.squaredNorm(), bands, x.size());
}

int MoSEModel::max_order() const {
  int k = 0;
  for (const auto& e : experts) k = std::max(k, e.order());
  return k;
}

void MoSEModel::validate() const {
  require(!experts.empty(), ErrorCode::invalid_argument, "MoSE model needs at least one expert");
  require(gating_weights.rows() == expert_count(), ErrorCode::dimension_mismatch,
          "MoSE gating weights must have one row per expert");
  require(feature_names.empty() || static_cast<Eigen::Index>(feature_names.size()) == gating_weights.cols(),
          ErrorCode::dimension_mismatch, "MoSE feature names do not match the gating width");
  const double lmax = experts.front().lambda_max();
  for (const auto& e : experts) {
    require(std::abs(e.lambda_max() - lmax) <= kLambdaMaxMatchTol * std::max(1.0, lmax),
            ErrorCode::lambda_mismatch, "MoSE experts must share lambda_max");
  }
}

MoSEModel MoSEModel::uniform(std::vector<ChebyshevFilter> experts) {
  MoSEModel m;
  const auto b = static_cast<Eigen::Index>(experts.size());
  m.experts = std::move(experts);
  m.gating_weights = Matrix::Zero(b, kGatingFeatureCount);
  m.feature_names = default_feature_names();
  m.validate();
  return m;
}

Vector softmax(const Vector& logits) {
  require(logits.size() > 0, ErrorCode::invalid_argument, "softmax of an empty vector");
  require(logits.allFinite(), ErrorCode::invalid_argument, "softmax: non-finite logits");
  const Vector e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

Vector mose_gate(const MoSEModel& model, const Vector& features) {
  require_same_size(features.size(), model.gating_weights.cols(), "mose_gate");
  require(model.gating_weights.rows() == model.expert_count(), ErrorCode::dimension_mismatch,
          "mose_gate: gating weights do not match the expert count");
  return softmax(model.gating_weights * features);
}

ChebyshevFilter pooled_filter(const MoSEModel& model, const Vector& alpha) {
  model.validate();
  require_same_size(alpha.size(), model.expert_count(), "pooled_filter");
  Vector theta = Vector::Zero(model.max_order() + 1);
  for (int b = 0; b < model.expert_count(); ++b) {
    const Vector& t = model.experts[b].theta();
    theta.head(t.size()) += alpha[b] * t;
  }
  return {std::move(theta), model.experts.front().lambda_max()};
}

Vector mose_apply(const MoSEModel& model, const ScaledLaplacian& lt, const Vector& x,
                  const Vector& features) {
  model.validate();
  const Vector alpha = mose_gate(model, features);
  Vector y = Vector::Zero(x.size());
  for (int b = 0; b < model.expert_count(); ++b) {
    y += alpha[b] * cheb_apply(model.experts[b], lt, x).y;
  }
  return y;
}

Vector mose_apply_budget(const MoSEModel& model, const ScaledLaplacian& lt, const Vector& x,
                         const Vector& features, int order, int experts) {
  model.validate();
  require(order >= 0 && experts >= 1, ErrorCode::invalid_argument,
          "mose_apply_budget: order must be >= 0 and experts >= 1");
  const Vector alpha = mose_gate(model, features);
  std::vector<int> rank(static_cast<std::size_t>(model.expert_count()));
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) { return alpha[a] > alpha[b]; });
  rank.resize(std::min<std::size_t>(rank.size(), static_cast<std::size_t>(experts)));
  double mass = 0.0;
  for (int b : rank) mass += alpha[b];
  Vector theta = Vector::Zero(order + 1);
  for (int b : rank) {
    const ChebyshevFilter e = model.experts[b].resized(order);
    theta += (alpha[b] / mass) * e.theta();
  }
  return cheb_apply(ChebyshevFilter(std::move(theta), model.experts.front().lambda_max()), lt, x).y;
}

nlohmann::json mose_to_json(const MoSEModel& model) {
  nlohmann::json experts = nlohmann::json::array();
  for (const auto& e : model.experts) {
    experts.push_back({{"lambda_max", e.lambda_max()},
                       {"theta", std::vector<double>(e.theta().data(), e.theta().data() + e.theta().size())}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < model.gating_weights.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(model.gating_weights.cols()));
    for (Eigen::Index c = 0; c < model.gating_weights.cols(); ++c) row[c] = model.gating_weights(r, c);
    rows.push_back(row);
  }
  return {{"experts", experts}, {"gating_weights", rows}, {"features", model.feature_names}};
}

MoSEModel mose_from_json(const nlohmann::json& j) {
  try {
    MoSEModel m;
    for (const auto& e : j.at("experts")) {
      const auto t = e.at("theta").get<std::vector<double>>();
      m.experts.emplace_back(Eigen::Map<const Vector>(t.data(), static_cast<Eigen::Index>(t.size())),
                             e.at("lambda_max").get<double>());
    }
    const auto rows = j.at("gating_weights").get<std::vector<std::vector<double>>>();
    const auto cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
    m.gating_weights = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      require(static_cast<Eigen::Index>(rows[r].size()) == cols, ErrorCode::parse,
              "ragged gating weight matrix");
      for (Eigen::Index c = 0; c < cols; ++c) m.gating_weights(static_cast<Eigen::Index>(r), c) = rows[r][c];
    }
    m.feature_names = j.value("features", std::vector<std::string>{});
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed MoSE model: ") + e.what());
  }
}

}  // namespace snsr
