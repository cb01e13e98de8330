#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "snsr/common.hpp"

namespace snsr::cli {

// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);

// Writes to "<path>.tmp" and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Belief CSV: optional "node,value" header, then "i,value" rows; missing
// nodes are zero. A file of bare values (one per line) is read positionally.
Vector read_beliefs_file(const std::filesystem::path& path, Index n);
std::string beliefs_csv(const Vector& x);

// Outputs and input digests collected while a command runs.
class RunContext {
 public:
  explicit RunContext(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {}
  const std::filesystem::path& out_dir() const { return out_dir_; }
  // Records the digest of an input file under `key`.
  void note_input(const std::string& key, const std::filesystem::path& path);
  // Writes out_dir/name atomically and records it as an output.
  void write_output(const std::string& name, const std::string& content);
  void write_manifest(const std::string& command, const nlohmann::json& config) const;
  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  std::filesystem::path out_dir_;
  nlohmann::json inputs_ = nlohmann::json::object();
  std::vector<std::string> outputs_;
};

}  // namespace snsr::cli
