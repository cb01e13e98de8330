#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snsr/filter/chebyshev.hpp"

namespace snsr {

// A symbolic rule realized as an analytic spectral response phi_r with a
// non-negative aggregation weight w_r.
struct RuleTemplate {
  std::string name;
  AnalyticResponse response = AnalyticResponse::identity();
  double weight = 1.0;

  // {"name", "kind", "params", "weight"}
  nlohmann::json to_json() const;
  static RuleTemplate from_json(const nlohmann::json& j);
};

void validate_rule_template(const RuleTemplate& t);

class RuleSet {
 public:
  // Non-empty, unique names, valid templates.
  static RuleSet create(std::vector<RuleTemplate> templates);

  const std::vector<RuleTemplate>& templates() const { return templates_; }
  bool contains(const std::string& name) const;

 private:
  explicit RuleSet(std::vector<RuleTemplate> t) : templates_(std::move(t)) {}
  std::vector<RuleTemplate> templates_;
};

// Template file: JSON list of {name, kind, params, weight}.
RuleSet load_rule_set(std::istream& in);
RuleSet load_rule_set_file(const std::filesystem::path& path);

inline constexpr int kDefaultRuleOrder = 16;

// Phi_r x, exact on the eigenbasis.
Vector apply_rule(const RuleTemplate& t, const SpectralBasis& basis, const Vector& x);
// Phi_r x through a Chebyshev fit of phi_r at the operator's scaling.
Vector apply_rule(const RuleTemplate& t, const ScaledLaplacian& lt, const Vector& x,
                  int order = kDefaultRuleOrder);

// b' = sum_r w_r Phi_r x
Vector aggregate_rules(const RuleSet& rs, const SpectralBasis& basis, const Vector& x);
Vector aggregate_rules(const RuleSet& rs, const ScaledLaplacian& lt, const Vector& x,
                       int order = kDefaultRuleOrder);

// phi_*(lambda) = sum_r w_r phi_r(lambda)
class MixtureResponse {
 public:
  explicit MixtureResponse(const RuleSet& rs) : templates_(rs.templates()) {}
  double operator()(double lambda) const;
  ResponseFn as_function() const;

 private:
  std::vector<RuleTemplate> templates_;
};

MixtureResponse mixture_response(const RuleSet& rs);

// Hard and soft predicates. In hard mode soft mirrors hard as 0/1 and
// temperature is empty.
struct PredicateVector {
  std::vector<bool> hard;
  Vector soft;
  double threshold = 0.0;
  std::optional<double> temperature;
};

// hard: p_i = [y_i > threshold]
// soft: s_i = sigmoid(temperature (y_i - threshold)), p_i = [s_i > 0.5]
PredicateVector project_predicates(const Vector& y, double threshold,
                                   std::optional<double> temperature = std::nullopt);

}  // namespace snsr
