#include "snsr/training/curriculum.hpp"

#include <cmath>

namespace snsr {

void CurriculumSchedule::validate(int order) const {
  if (stages.empty()) return;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const CurriculumStage& st = stages[s];
    require(st.epoch_start >= 0, ErrorCode::invalid_argument, "curriculum epoch_start must be >= 0");
    require(st.active_order >= 0 && st.active_order <= order, ErrorCode::invalid_argument,
            "curriculum active_order must lie in [0, " + std::to_string(order) + "]");
    if (s > 0) {
      require(st.epoch_start > stages[s - 1].epoch_start, ErrorCode::invalid_argument,
              "curriculum epoch_start must be strictly increasing");
      require(st.active_order >= stages[s - 1].active_order, ErrorCode::invalid_argument,
              "curriculum active_order must be non-decreasing");
    }
  }
  require(stages.back().active_order == order, ErrorCode::invalid_argument,
          "curriculum final stage must reach order " + std::to_string(order));
}

int CurriculumSchedule::active_order(int epoch, int order) const {
  if (stages.empty()) return order;
  int active = stages.front().active_order;
  for (const CurriculumStage& st : stages) {
    if (st.epoch_start <= epoch) active = st.active_order;
  }
  return active;
}

CurriculumSchedule CurriculumSchedule::linear(int order, int epochs, int count) {
  require(order >= 0 && epochs >= 1 && count >= 1, ErrorCode::invalid_argument,
          "linear curriculum needs order >= 0, epochs >= 1, count >= 1");
  CurriculumSchedule s;
  count = std::min(count, epochs);
  for (int c = 0; c < count; ++c) {
    const int start = epochs * c / count;
    const int active = count == 1 ? order : order * c / (count - 1);
    if (!s.stages.empty() && s.stages.back().epoch_start == start) continue;
    s.stages.push_back({start, active});
  }
  s.stages.back().active_order = order;
  s.validate(order);
  return s;
}

nlohmann::json CurriculumSchedule::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& st : stages) out.push_back({{"epoch_start", st.epoch_start}, {"active_order", st.active_order}});
  return out;
}

CurriculumSchedule CurriculumSchedule::from_json(const nlohmann::json& j) {
  try {
    CurriculumSchedule s;
    for (const auto& st : j) {
      s.stages.push_back({st.at("epoch_start").get<int>(), st.at("active_order").get<int>()});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed curriculum: ") + e.what());
  }
}

std::vector<bool> curriculum_mask(const CurriculumSchedule& schedule, int epoch, int order) {
  require(order >= 0, ErrorCode::invalid_argument, "curriculum_mask: order must be >= 0");
  const int active = schedule.active_order(epoch, order);
  std::vector<bool> mask(static_cast<std::size_t>(order) + 1, false);
  for (int k = 0; k <= std::min(active, order); ++k) mask[k] = true;
  return mask;
}

void AllocationConfig::validate() const {
  require(k_min >= 0 && k_min <= k_max, ErrorCode::invalid_argument,
          "allocation requires 0 <= k_min <= k_max");
  require(b_max >= 1, ErrorCode::invalid_argument, "allocation requires b_max >= 1");
  require(!thresholds.empty(), ErrorCode::invalid_argument, "allocation requires thresholds");
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    require(std::isfinite(thresholds[t]), ErrorCode::invalid_argument, "allocation thresholds must be finite");
    require(t == 0 || thresholds[t] > thresholds[t - 1], ErrorCode::invalid_argument,
            "allocation thresholds must be increasing");
  }
}

std::pair<int, int> dynamic_allocate(double difficulty, const AllocationConfig& config) {
  config.validate();
  require(difficulty >= 0.0 && !std::isnan(difficulty), ErrorCode::invalid_argument,
          "difficulty must be >= 0");
  int level = 0;
  for (double t : config.thresholds) level += difficulty >= t ? 1 : 0;
  const double frac = static_cast<double>(level) / static_cast<double>(config.thresholds.size());
  const int k = config.k_min + static_cast<int>(std::lround((config.k_max - config.k_min) * frac));
  const int b = 1 + static_cast<int>(std::lround((config.b_max - 1) * frac));
  return {k, b};
}

double allocation_difficulty(const ChebyshevFilter& f, const ScaledLaplacian& lt, const Vector& x,
                             int k_min) {
  require(k_min >= 0, ErrorCode::invalid_argument, "allocation_difficulty: k_min must be >= 0");
  const Vector lo = cheb_apply(f.resized(k_min), lt, x).y;
  const Vector hi = cheb_apply(f.resized(2 * k_min), lt, x).y;
  const double denom = hi.norm();
  return denom > 0.0 ? (lo - hi).norm() / denom : 0.0;
}

}  // namespace snsr
