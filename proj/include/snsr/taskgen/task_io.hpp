#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "snsr/taskgen/taskgen.hpp"

namespace snsr {

// {"kind", "seed", "degenerate", "nodes", "sign", "edges": [[i, j, w], ...],
//  "seed_beliefs": [[i, v], ...] (non-zero entries), "labels": [0|1, ...],
//  "allowed_bands": [...], "atom_map": [[i, atom], ...], "rulebase": {...}?}
nlohmann::json task_to_json(const TaskInstance& t);
TaskInstance task_from_json(const nlohmann::json& j);

// Task set file: {"tasks": [...]}
std::string tasks_to_text(const std::vector<TaskInstance>& tasks);
std::vector<TaskInstance> read_tasks(std::istream& in);
std::vector<TaskInstance> read_tasks_file(const std::filesystem::path& path);

}  // namespace snsr
