#include "snsr/taskgen/task_io.hpp"

#include <fstream>

namespace snsr {

nlohmann::json task_to_json(const TaskInstance& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : t.graph.edges()) edges.push_back({e.i, e.j, e.w});
  nlohmann::json beliefs = nlohmann::json::array();
  for (Index i = 0; i < t.seed_beliefs.size(); ++i) {
    if (t.seed_beliefs[i] != 0.0) beliefs.push_back({i, t.seed_beliefs[i]});
  }
  std::vector<int> labels(t.labels.begin(), t.labels.end());
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& [node, atom] : t.atom_map) atoms.push_back({node, atom});
  nlohmann::json j = {
      {"kind", to_string(t.kind)},
      {"seed", t.seed},
      {"degenerate", t.degenerate},
      {"nodes", t.graph.node_count()},
      {"sign", t.graph.sign() == WeightSign::signed_weights ? "signed" : "unsigned"},
      {"edges", edges},
      {"seed_beliefs", beliefs},
      {"labels", labels},
      {"allowed_bands", std::vector<int>(t.allowed_bands.begin(), t.allowed_bands.end())},
      {"atom_map", atoms},
  };
  if (t.rulebase) j["rulebase"] = t.rulebase->to_json();
  return j;
}

TaskInstance task_from_json(const nlohmann::json& j) {
  try {
    TaskInstance t;
    t.kind = task_kind_from_string(j.at("kind").get<std::string>());
    t.seed = j.value("seed", std::uint64_t{0});
    t.degenerate = j.value("degenerate", false);
    const auto n = j.at("nodes").get<Index>();
    const WeightSign sign =
        j.value("sign", std::string("unsigned")) == "signed" ? WeightSign::signed_weights : WeightSign::unsigned_weights;
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<Index>(), e.at(1).get<Index>(), e.at(2).get<double>()});
    t.graph = Graph::create(n, std::move(edges), sign);
    t.seed_beliefs = Vector::Zero(n);
    for (const auto& b : j.at("seed_beliefs")) {
      const auto i = b.at(0).get<Index>();
      require(i >= 0 && i < n, ErrorCode::invalid_argument, "seed belief index out of range");
      t.seed_beliefs[i] = b.at(1).get<double>();
    }
    for (int l : j.at("labels").get<std::vector<int>>()) t.labels.push_back(l != 0);
    for (int b : j.at("allowed_bands").get<std::vector<int>>()) t.allowed_bands.insert(b);
    if (j.contains("atom_map")) {
      for (const auto& a : j.at("atom_map")) t.atom_map[a.at(0).get<Index>()] = a.at(1).get<std::string>();
    }
    if (j.contains("rulebase")) t.rulebase = RuleBase::from_json(j.at("rulebase"));
    t.validate();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed task: ") + e.what());
  }
}

std::string tasks_to_text(const std::vector<TaskInstance>& tasks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : tasks) arr.push_back(task_to_json(t));
  return nlohmann::json{{"tasks", arr}}.dump() + "\n";
}

std::vector<TaskInstance> read_tasks(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed task file: ") + e.what());
  }
  std::vector<TaskInstance> out;
  try {
    for (const auto& t : j.at("tasks")) out.push_back(task_from_json(t));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed task file: ") + e.what());
  }
  return out;
}

std::vector<TaskInstance> read_tasks_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  return read_tasks(in);
}

}  // namespace snsr
