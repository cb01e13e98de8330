#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "snsr/analysis/bands.hpp"
#include "snsr/training/curriculum.hpp"
#include "snsr/training/gradients.hpp"
#include "snsr/training/mose.hpp"

namespace snsr {

// Everything derived from one graph that the trainer and evaluator reuse:
// the Laplacian, its scaled form at the margin-inflated lambda_max, an
// optional dense eigenbasis and the default three-band partition.
struct GraphContext {
  Laplacian laplacian;
  ScaledLaplacian scaled;
  LambdaMaxEstimate lambda_max;
  std::optional<SpectralBasis> basis;
  BandPartition partition;

  // The partition spans [0, max(lambda_max estimate, top eigenvalue)].
  static std::shared_ptr<const GraphContext> make(const Laplacian& l, bool with_basis,
                                                  const PowerMethodOptions& power = {});
  const SpectralBasis& require_basis(const char* context) const;
};

enum class LossKind { squared_error, cross_entropy };

struct PenaltyWeights {
  double proof = 0.0;
  double rule_consistency = 0.0;
  double transfer = 0.0;
};

// squared_error: 0.5 ||y - target||^2
// cross_entropy: mean over nodes of -[l log s + (1 - l) log(1 - s)],
//                s = sigmoid(temperature (y - threshold))
struct LossSpec {
  LossKind kind = LossKind::squared_error;
  double threshold = 0.0;
  double temperature = 1.0;
  PenaltyWeights weights;

  void validate() const;
};

struct TrainingSample {
  std::shared_ptr<const GraphContext> graph;
  Vector x;
  Vector target;             // squared_error
  std::vector<bool> labels;  // cross_entropy
  BandSet allowed_bands;
  // Reference spectrum for the transfer penalty: either N coefficients on
  // this graph's basis or a kTransferGrid profile from another graph.
  std::optional<Vector> transfer_reference;
};

struct LaplacianLearning {
  bool enabled = false;
  int reestimate_every = 10;
  std::optional<RuleConsistencyTarget> rule_target;
};

struct Augmentation {
  bool enabled = false;
  int band = 2;
  double magnitude = 0.0;
};

struct TrainConfig {
  double learning_rate = 0.05;
  int epochs = 100;
  std::uint64_t seed = 0;
  // <= 0 disables clipping.
  double clip_norm = 10.0;
  CurriculumSchedule curriculum;
  LaplacianLearning laplacian;
  Augmentation augmentation;

  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

// Per-epoch losses at the parameters before that epoch's step.
struct LossRecord {
  int epoch = 0;
  double total = 0.0;
  double data_term = 0.0;
  double proof_penalty = 0.0;
  double rule_consistency = 0.0;
  double transfer = 0.0;
};

std::string loss_history_csv(const std::vector<LossRecord>& history);

struct TrainResult {
  ChebyshevFilter filter;
  std::optional<Laplacian> learned_laplacian;
  std::vector<LossRecord> history;
};

struct MoSETrainResult {
  MoSEModel model;
  std::vector<LossRecord> history;
};

// Full-batch gradient descent. The filter's theta is reinterpreted at each
// sample graph's lambda_max. Throws ErrorCode::divergence naming the epoch
// when the loss becomes non-finite.
TrainResult train(const ChebyshevFilter& init, const std::vector<TrainingSample>& data,
                  const LossSpec& loss, const TrainConfig& config);
MoSETrainResult train(const MoSEModel& init, const std::vector<TrainingSample>& data,
                      const LossSpec& loss, const TrainConfig& config);

// Loss value and dL/dy for one output (data term only).
double data_loss(const LossSpec& loss, const TrainingSample& s, const Vector& y, Vector* grad);

}  // namespace snsr
