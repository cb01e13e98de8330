#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "snsr/graph/graph.hpp"
#include "snsr/rules/rules.hpp"

namespace snsr {

struct EdgeProposal {
  Index i = 0;
  Index j = 0;
  double w = 1.0;
};

// Candidate edge or rule produced by an external generator.
struct Proposal {
  std::variant<EdgeProposal, RuleTemplate> kind;
  std::string origin;
};

struct ValidationConfig {
  // Accepted iff lambda_max(after) <= max_lambda_growth * lambda_max(before).
  double max_lambda_growth = 1.5;
  // Accepted iff sup over the grid of |phi_r| <= max_response.
  double max_response = 1.0;
  int grid_points = 1001;
  LaplacianVariant variant = LaplacianVariant::combinatorial;
};

struct Verdict {
  bool accepted = false;
  // Machine-readable rejection code, empty when accepted:
  // index_out_of_range, self_loop, duplicate_edge, invalid_weight,
  // lambda_growth, negative_weight, duplicate_name, invalid_name, response_bound.
  std::string reason;
  std::string detail;
};

// Deterministic and side-effect free. `basis` must be the eigenbasis of the
// graph's Laplacian (its top eigenvalue is the reference lambda_max, and the
// rule response grid spans [0, that lambda_max]).
Verdict validate_proposal(const Proposal& p, const Graph& g, const RuleSet& rs,
                          const SpectralBasis& basis, const ValidationConfig& bounds = {});

// One JSON object per line:
//   {"kind": "edge", "i": 0, "j": 1, "w": 1.0, "origin": "..."}
//   {"kind": "rule", "template": {name, kind, params, weight}, "origin": "..."}
// Blank lines are skipped; malformed lines throw with their line number.
std::vector<Proposal> parse_proposals(std::istream& in);

}  // namespace snsr
