#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "snsr/rules/rules.hpp"
#include "snsr/taskgen/taskgen.hpp"
#include "snsr/training/curriculum.hpp"
#include "snsr/training/trainer.hpp"

namespace snsr {

// A model maps an instance's input beliefs to output beliefs on its graph.
struct Model {
  std::string name;
  std::function<Vector(const GraphContext&, const TaskInstance&, const Vector&)> apply;
};

// Chebyshev fit of `r` at each graph's lambda_max, applied by recurrence.
Model response_model(const std::string& name, const AnalyticResponse& r, int order = 16);
// Fixed coefficients, reinterpreted at each graph's lambda_max.
Model filter_model(const std::string& name, const ChebyshevFilter& f);
// Exact diffusion through the conjugate-gradient solve.
Model rational_model(const std::string& name, double tau);
// Exact response on the dense eigenbasis.
Model oracle_model(const std::string& name, const AnalyticResponse& r);
// Returns +1 on positive labels and -1 elsewhere.
Model label_model(const std::string& name = "labels");
Model constant_model(const std::string& name, double value);
Model mose_model(const std::string& name, const MoSEModel& m);
// Per-instance budget: difficulty of the pooled filter picks (K, B).
Model allocated_mose_model(const std::string& name, const MoSEModel& m, const AllocationConfig& config);

struct PerturbationConfig {
  int band = 2;
  double magnitude = 0.0;
  std::uint64_t seed = 0;
};

struct EvalConfig {
  // Predicate threshold for community and chain tasks.
  double threshold = 0.0;
  std::optional<PerturbationConfig> perturbation;
  int latency_repeats = 5;
  // Dense bases are built for graphs up to this size.
  Index basis_cap = kDefaultOracleCap;
};

struct EvalReport {
  std::string model;
  int instances = 0;
  // community: node accuracy of [y > threshold]
  // contradiction: node accuracy of the top-P |y| nodes, P = planted count
  // chain: F1 between the pipeline closure and the labelled atoms
  double accuracy = 0.0;
  double latency_ms = 0.0;
  // Mean band energy fractions of the outputs (three bands).
  Vector band_fractions;
  // Percentage points, clean minus perturbed; 0 without a perturbation.
  double robustness_drop = 0.0;
  double proof_band_agreement = 0.0;
  // Contradiction tasks only.
  std::optional<double> auc;
  // Per-instance accuracies in input order.
  std::vector<double> per_instance;
};

EvalReport evaluate(const Model& model, const std::vector<TaskInstance>& instances,
                    const EvalConfig& config = {});

// Accuracy of one instance given the model output.
double instance_accuracy(const TaskInstance& t, const Vector& y, double threshold);

// Nodes whose atoms are in the closure of the facts projected from y.
std::vector<bool> chain_prediction(const TaskInstance& t, const Vector& y, double threshold);

// Exact AUC over all (positive, negative) pairs; ties count one half.
double rank_auc(const Vector& scores, const std::vector<bool>& labels);

// accuracy(clean) - accuracy(perturbed) in percentage points.
double robustness_drop(const Model& model, const std::vector<TaskInstance>& instances,
                       const PerturbationConfig& perturbation, const EvalConfig& config = {});

std::string eval_csv_header();
std::string eval_csv_row(const EvalReport& r, const std::string& task_set);

}  // namespace snsr
