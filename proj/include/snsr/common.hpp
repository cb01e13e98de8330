#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

namespace snsr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = std::int32_t;

// Set of band indices into a BandPartition.
using BandSet = std::set<int>;

enum class ErrorCode {
  parse,
  invalid_argument,
  dimension_mismatch,
  domain_mismatch,
  lambda_mismatch,
  oracle_unavailable,
  not_converged,
  divergence,
  io,
};

// Library-wide exception. The code lets callers (and the CLI) branch on the
// failure class without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

inline void require_same_size(Eigen::Index a, Eigen::Index b, const char* context) {
  if (a != b) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(context) + ": dimension mismatch (" + std::to_string(a) +
                    " vs " + std::to_string(b) + ")");
  }
}

}  // namespace snsr
