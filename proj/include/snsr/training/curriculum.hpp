#pragma once

#include <utility>
#include <vector>

#include "json.hpp"
#include "snsr/filter/chebyshev.hpp"

namespace snsr {

struct CurriculumStage {
  int epoch_start = 0;
  int active_order = 0;
};

// Coefficients 0..active_order are trainable from epoch_start on. An empty
// schedule leaves every coefficient active.
struct CurriculumSchedule {
  std::vector<CurriculumStage> stages;

  // epoch_start strictly increasing, active_order non-decreasing, in [0, order],
  // and the last stage reaches `order`.
  void validate(int order) const;
  // Epochs before the first stage use the first stage.
  int active_order(int epoch, int order) const;

  // `count` evenly spaced stages over `epochs`, unlocking low to high.
  static CurriculumSchedule linear(int order, int epochs, int count);

  nlohmann::json to_json() const;
  static CurriculumSchedule from_json(const nlohmann::json& j);
};

std::vector<bool> curriculum_mask(const CurriculumSchedule& schedule, int epoch, int order);

struct AllocationConfig {
  int k_min = 4;
  int k_max = 16;
  int b_max = 3;
  std::vector<double> thresholds{0.01, 0.05, 0.2};

  void validate() const;
};

// Level l = number of thresholds <= difficulty, T = threshold count:
//   K = k_min + round((k_max - k_min) l / T), B = 1 + round((b_max - 1) l / T).
std::pair<int, int> dynamic_allocate(double difficulty, const AllocationConfig& config);

// ||y_{k_min} - y_{2 k_min}|| / ||y_{2 k_min}||, with y_k the output of `f`
// truncated (or zero-padded) to order k. Zero when y_{2 k_min} = 0.
double allocation_difficulty(const ChebyshevFilter& f, const ScaledLaplacian& lt, const Vector& x,
                             int k_min);

}  // namespace snsr
