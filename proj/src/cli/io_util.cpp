#include "snsr/cli/io_util.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "snsr/filter/filter_io.hpp"

namespace snsr::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  require(ctx != nullptr, ErrorCode::io, "sha256: cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  require(ok, ErrorCode::io, "sha256: digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

Vector read_beliefs_file(const std::filesystem::path& path, Index n) {
  std::istringstream in(read_text_file(path));
  Vector x = Vector::Zero(n);
  std::string line;
  int line_no = 0;
  Index position = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.rfind("node", 0) == 0) continue;
    const auto where = "beliefs line " + std::to_string(line_no);
    try {
      const auto comma = line.find(',');
      Index i = position;
      double v = 0.0;
      if (comma == std::string::npos) {
        v = std::stod(line);
        ++position;
      } else {
        i = static_cast<Index>(std::stol(line.substr(0, comma)));
        v = std::stod(line.substr(comma + 1));
      }
      require(i >= 0 && i < n, ErrorCode::parse, where + ": node index out of range");
      require(std::isfinite(v), ErrorCode::parse, where + ": non-finite value");
      x[i] = v;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse, where + ": malformed row");
    }
  }
  return x;
}

std::string beliefs_csv(const Vector& x) {
  std::string out = "node,value\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) out += fmt::format("{},{}\n", i, format_real(x[i]));
  return out;
}

void RunContext::note_input(const std::string& key, const std::filesystem::path& path) {
  inputs_[key] = {{"path", path.string()}, {"sha256", sha256_file(path)}};
}

void RunContext::write_output(const std::string& name, const std::string& content) {
  write_file_atomic(out_dir_ / name, content);
  outputs_.push_back(name);
}

void RunContext::write_manifest(const std::string& command, const nlohmann::json& config) const {
  const nlohmann::json manifest = {
      {"command", command}, {"config", config}, {"inputs", inputs_}, {"outputs", outputs_}};
  write_file_atomic(out_dir_ / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace snsr::cli
