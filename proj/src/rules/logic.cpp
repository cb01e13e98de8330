#include "snsr/rules/logic.hpp"

#include <deque>
#include <fstream>
#include <map>

namespace snsr {

RuleBase RuleBase::create(std::vector<std::string> atoms, std::vector<HornClause> clauses) {
  AtomSet declared;
  for (std::string& a : atoms) {
    require(!a.empty(), ErrorCode::invalid_argument, "rule base atom names must be non-empty");
    declared.insert(std::move(a));
  }
  for (const HornClause& c : clauses) {
    require(!c.head.empty(), ErrorCode::invalid_argument, "clause with empty head");
    require(declared.count(c.head) > 0, ErrorCode::invalid_argument,
            "clause head '" + c.head + "' is not a declared atom");
    for (const std::string& b : c.body) {
      require(declared.count(b) > 0, ErrorCode::invalid_argument,
              "clause body atom '" + b + "' is not a declared atom");
    }
  }
  return RuleBase(std::move(declared), std::move(clauses));
}

RuleBase RuleBase::with_atoms(const std::vector<std::string>& extra) const {
  std::vector<std::string> atoms(atoms_.begin(), atoms_.end());
  atoms.insert(atoms.end(), extra.begin(), extra.end());
  return create(std::move(atoms), clauses_);
}

nlohmann::json RuleBase::to_json() const {
  nlohmann::json clauses = nlohmann::json::array();
  for (const HornClause& c : clauses_) clauses.push_back({{"body", c.body}, {"head", c.head}});
  return {{"atoms", std::vector<std::string>(atoms_.begin(), atoms_.end())}, {"clauses", clauses}};
}

RuleBase RuleBase::from_json(const nlohmann::json& j, const std::vector<std::string>& extra_atoms) {
  try {
    std::vector<std::string> atoms = j.at("atoms").get<std::vector<std::string>>();
    atoms.insert(atoms.end(), extra_atoms.begin(), extra_atoms.end());
    std::vector<HornClause> clauses;
    if (j.contains("clauses")) {
      for (const auto& c : j.at("clauses")) {
        clauses.push_back({c.contains("body") ? c.at("body").get<std::vector<std::string>>()
                                              : std::vector<std::string>{},
                           c.at("head").get<std::string>()});
      }
    }
    return create(std::move(atoms), std::move(clauses));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed rule base: ") + e.what());
  }
}

RuleBase load_rule_base(std::istream& in, const std::vector<std::string>& extra_atoms) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed rule base: ") + e.what());
  }
  return RuleBase::from_json(j, extra_atoms);
}

RuleBase load_rule_base_file(const std::filesystem::path& path, const std::vector<std::string>& extra_atoms) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  return load_rule_base(in, extra_atoms);
}

AtomSet forward_chain(const RuleBase& rb, const AtomSet& facts) {
  for (const std::string& f : facts) {
    require(rb.atoms().count(f) > 0, ErrorCode::invalid_argument, "unknown atom in facts: " + f);
  }
  const auto& clauses = rb.clauses();
  // Distinct body atoms per clause; repeated body atoms count once.
  std::vector<std::size_t> missing(clauses.size());
  std::map<std::string, std::vector<std::size_t>> watchers;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const AtomSet body(clauses[c].body.begin(), clauses[c].body.end());
    missing[c] = body.size();
    for (const std::string& b : body) watchers[b].push_back(c);
  }

  AtomSet closure;
  std::deque<std::string> agenda;
  auto assert_atom = [&](const std::string& a) {
    if (closure.insert(a).second) agenda.push_back(a);
  };
  for (const std::string& f : facts) assert_atom(f);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (missing[c] == 0) assert_atom(clauses[c].head);
  }
  while (!agenda.empty()) {
    const std::string atom = agenda.front();
    agenda.pop_front();
    const auto it = watchers.find(atom);
    if (it == watchers.end()) continue;
    for (std::size_t c : it->second) {
      if (--missing[c] == 0) assert_atom(clauses[c].head);
    }
  }
  return closure;
}

}  // namespace snsr
