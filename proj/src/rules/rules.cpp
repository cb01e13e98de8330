#include "snsr/rules/rules.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>

namespace snsr {

nlohmann::json RuleTemplate::to_json() const {
  nlohmann::json r = response.to_json();
  return {{"name", name}, {"kind", r["kind"]}, {"params", r["params"]}, {"weight", weight}};
}

RuleTemplate RuleTemplate::from_json(const nlohmann::json& j) {
  try {
    RuleTemplate t;
    t.name = j.at("name").get<std::string>();
    nlohmann::json r = {{"kind", j.at("kind")}};
    if (j.contains("params")) r["params"] = j.at("params");
    t.response = AnalyticResponse::from_json(r);
    t.weight = j.contains("weight") ? j.at("weight").get<double>() : 1.0;
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed rule template: ") + e.what());
  }
}

void validate_rule_template(const RuleTemplate& t) {
  require(!t.name.empty(), ErrorCode::invalid_argument, "rule template name is empty");
  for (char c : t.name) {
    require(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.',
            ErrorCode::invalid_argument, "rule template name is not an identifier: " + t.name);
  }
  require(std::isfinite(t.weight) && t.weight >= 0.0, ErrorCode::invalid_argument,
          "rule template '" + t.name + "' needs a finite non-negative weight");
}

RuleSet RuleSet::create(std::vector<RuleTemplate> templates) {
  require(!templates.empty(), ErrorCode::invalid_argument, "rule set is empty");
  std::set<std::string> names;
  for (const RuleTemplate& t : templates) {
    validate_rule_template(t);
    require(names.insert(t.name).second, ErrorCode::invalid_argument,
            "duplicate rule template name: " + t.name);
  }
  return RuleSet(std::move(templates));
}

bool RuleSet::contains(const std::string& name) const {
  for (const RuleTemplate& t : templates_) {
    if (t.name == name) return true;
  }
  return false;
}

RuleSet load_rule_set(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed template file: ") + e.what());
  }
  require(j.is_array(), ErrorCode::parse, "template file must be a JSON list");
  std::vector<RuleTemplate> templates;
  for (const auto& item : j) templates.push_back(RuleTemplate::from_json(item));
  return RuleSet::create(std::move(templates));
}

RuleSet load_rule_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  return load_rule_set(in);
}

Vector apply_rule(const RuleTemplate& t, const SpectralBasis& basis, const Vector& x) {
  return dense_filter_apply(basis, t.response, x);
}

Vector apply_rule(const RuleTemplate& t, const ScaledLaplacian& lt, const Vector& x, int order) {
  require(order >= 0, ErrorCode::invalid_argument, "apply_rule: sparse path needs a fit order");
  const ChebyshevFilter f = fit_chebyshev(t.response, order, lt.lambda_max());
  return cheb_apply(f, lt, x).y;
}

Vector aggregate_rules(const RuleSet& rs, const SpectralBasis& basis, const Vector& x) {
  Vector out = Vector::Zero(x.size());
  for (const RuleTemplate& t : rs.templates()) out += t.weight * apply_rule(t, basis, x);
  return out;
}

Vector aggregate_rules(const RuleSet& rs, const ScaledLaplacian& lt, const Vector& x, int order) {
  Vector out = Vector::Zero(x.size());
  for (const RuleTemplate& t : rs.templates()) out += t.weight * apply_rule(t, lt, x, order);
  return out;
}

double MixtureResponse::operator()(double lambda) const {
  double acc = 0.0;
  for (const RuleTemplate& t : templates_) acc += t.weight * t.response(lambda);
  return acc;
}

ResponseFn MixtureResponse::as_function() const {
  return [m = *this](double lambda) { return m(lambda); };
}

MixtureResponse mixture_response(const RuleSet& rs) { return MixtureResponse(rs); }

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

PredicateVector project_predicates(const Vector& y, double threshold,
                                   std::optional<double> temperature) {
  require(y.allFinite(), ErrorCode::invalid_argument, "project_predicates: non-finite belief");
  require(std::isfinite(threshold), ErrorCode::invalid_argument, "threshold must be finite");
  PredicateVector p;
  p.threshold = threshold;
  p.temperature = temperature;
  p.hard.resize(static_cast<std::size_t>(y.size()));
  p.soft.resize(y.size());
  if (!temperature) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      p.hard[i] = y[i] > threshold;
      p.soft[i] = p.hard[i] ? 1.0 : 0.0;
    }
    return p;
  }
  require(std::isfinite(*temperature) && *temperature > 0.0, ErrorCode::invalid_argument,
          "soft projection needs a positive temperature");
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    p.soft[i] = sigmoid(*temperature * (y[i] - threshold));
    p.hard[i] = p.soft[i] > 0.5;
  }
  return p;
}

}  // namespace snsr
