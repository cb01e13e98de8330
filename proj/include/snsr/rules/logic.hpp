#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "snsr/common.hpp"

namespace snsr {

using AtomSet = std::set<std::string>;

// Propositional Horn clause: body (conjunction, possibly empty) -> head.
struct HornClause {
  std::vector<std::string> body;
  std::string head;

  friend bool operator==(const HornClause&, const HornClause&) = default;
};

class RuleBase {
 public:
  // Every atom named by a clause must be declared; heads must be non-empty.
  static RuleBase create(std::vector<std::string> atoms, std::vector<HornClause> clauses);

  const AtomSet& atoms() const { return atoms_; }
  const std::vector<HornClause>& clauses() const { return clauses_; }

  // Copy with extra declared atoms (no new clauses).
  RuleBase with_atoms(const std::vector<std::string>& extra) const;

  nlohmann::json to_json() const;
  // `extra_atoms` are declared in addition to the file's own list.
  static RuleBase from_json(const nlohmann::json& j, const std::vector<std::string>& extra_atoms = {});

  friend bool operator==(const RuleBase&, const RuleBase&) = default;

 private:
  RuleBase(AtomSet atoms, std::vector<HornClause> clauses)
      : atoms_(std::move(atoms)), clauses_(std::move(clauses)) {}

  AtomSet atoms_;
  std::vector<HornClause> clauses_;
};

// {"atoms": [...], "clauses": [{"body": [...], "head": "..."}]}
RuleBase load_rule_base(std::istream& in, const std::vector<std::string>& extra_atoms = {});
RuleBase load_rule_base_file(const std::filesystem::path& path, const std::vector<std::string>& extra_atoms = {});

// Least fixpoint of the clauses above `facts` (the minimal model). Linear in
// the total clause size: each clause keeps a count of unsatisfied body atoms.
AtomSet forward_chain(const RuleBase& rb, const AtomSet& facts);

}  // namespace snsr
