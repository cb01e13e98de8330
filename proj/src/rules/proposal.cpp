#include "snsr/rules/proposal.hpp"

#include <cmath>
#include <istream>

namespace snsr {

namespace {

Verdict reject(std::string reason, std::string detail) {
  return {false, std::move(reason), std::move(detail)};
}

Verdict validate_edge(const EdgeProposal& e, const Graph& g, const SpectralBasis& basis,
                      const ValidationConfig& bounds) {
  const Index n = g.node_count();
  if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
    return reject("index_out_of_range", "edge endpoints must lie in [0, " + std::to_string(n) + ")");
  }
  if (e.i == e.j) return reject("self_loop", "edge proposal joins node " + std::to_string(e.i) + " to itself");
  const Index a = std::min(e.i, e.j);
  const Index b = std::max(e.i, e.j);
  for (const Edge& existing : g.edges()) {
    if (existing.i == a && existing.j == b) {
      return reject("duplicate_edge", "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") already present");
    }
  }
  const bool sign_ok = g.sign() == WeightSign::signed_weights ? e.w != 0.0 : e.w > 0.0;
  if (!std::isfinite(e.w) || !sign_ok) return reject("invalid_weight", "weight violates the graph's sign variant");

  std::vector<Edge> edges = g.edges();
  edges.push_back({a, b, e.w});
  const Graph augmented = Graph::create(n, std::move(edges), g.sign());
  const SpectralBasis after = eigendecompose(build_laplacian(augmented, bounds.variant));
  const double before_max = basis.max_eigenvalue();
  const double after_max = after.max_eigenvalue();
  if (after_max > bounds.max_lambda_growth * before_max) {
    return reject("lambda_growth", "lambda_max grows from " + std::to_string(before_max) + " to " +
                                       std::to_string(after_max));
  }
  return {true, "", ""};
}

Verdict validate_rule(const RuleTemplate& t, const RuleSet& rs, const SpectralBasis& basis,
                      const ValidationConfig& bounds) {
  if (!std::isfinite(t.weight) || t.weight < 0.0) return reject("negative_weight", "rule weight must be >= 0");
  try {
    validate_rule_template(t);
  } catch (const Error& e) {
    return reject("invalid_name", e.what());
  }
  if (rs.contains(t.name)) return reject("duplicate_name", "rule '" + t.name + "' already exists");
  const double lambda_max = std::max(basis.max_eigenvalue(), 0.0);
  const int points = std::max(2, bounds.grid_points);
  double sup = 0.0;
  for (int k = 0; k < points; ++k) {
    sup = std::max(sup, std::abs(t.response(lambda_max * k / (points - 1))));
  }
  if (!(sup <= bounds.max_response)) {
    return reject("response_bound", "sup |phi| = " + std::to_string(sup) + " exceeds " +
                                        std::to_string(bounds.max_response));
  }
  return {true, "", ""};
}

}  // namespace

Verdict validate_proposal(const Proposal& p, const Graph& g, const RuleSet& rs,
                          const SpectralBasis& basis, const ValidationConfig& bounds) {
  require(basis.size() == g.node_count(), ErrorCode::dimension_mismatch,
          "validate_proposal: basis does not match the graph");
  if (const auto* e = std::get_if<EdgeProposal>(&p.kind)) return validate_edge(*e, g, basis, bounds);
  return validate_rule(std::get<RuleTemplate>(p.kind), rs, basis, bounds);
}

std::vector<Proposal> parse_proposals(std::istream& in) {
  std::vector<Proposal> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      Proposal p;
      p.origin = j.value("origin", std::string());
      if (kind == "edge") {
        p.kind = EdgeProposal{j.at("i").get<Index>(), j.at("j").get<Index>(), j.at("w").get<double>()};
      } else if (kind == "rule") {
        p.kind = RuleTemplate::from_json(j.at("template"));
      } else {
        throw Error(ErrorCode::parse, "unknown proposal kind '" + kind + "'");
      }
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse, "proposal line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, "proposal line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace snsr
