#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "snsr/common.hpp"

namespace snsr {

// Scalar spectral response h(lambda).
using ResponseFn = std::function<double(double)>;

enum class ResponseKind { diffusion, highpass, gaussian_bandpass, identity, polynomial };

std::string to_string(ResponseKind k);
ResponseKind response_kind_from_string(const std::string& s);

// Closed-form spectral responses used as filter targets and rule templates.
//   diffusion(tau):            1 / (1 + tau lambda)
//   highpass(beta):            lambda / (lambda + beta)
//   gaussian_bandpass(c, w):   exp(-(lambda - c)^2 / (2 w^2))
//   identity:                  1
//   polynomial(c0, c1, ...):   sum_j c_j lambda^j
class AnalyticResponse {
 public:
  static AnalyticResponse diffusion(double tau);
  static AnalyticResponse highpass(double beta);
  static AnalyticResponse gaussian_bandpass(double center, double width);
  static AnalyticResponse identity();
  static AnalyticResponse polynomial(std::vector<double> coeffs);

  ResponseKind kind() const { return kind_; }
  double tau() const { return a_; }
  double beta() const { return a_; }
  double center() const { return a_; }
  double width() const { return b_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(double lambda) const;
  ResponseFn as_function() const;

  // {"kind": ..., "params": {...}}
  nlohmann::json to_json() const;
  static AnalyticResponse from_json(const nlohmann::json& j);
  // Compact form used on the command line: "diffusion:tau=1",
  // "highpass:beta=2", "bandpass:center=1,width=0.5", "identity",
  // "polynomial:coeffs=-1;1".
  static AnalyticResponse parse(const std::string& spec);

  friend bool operator==(const AnalyticResponse&, const AnalyticResponse&) = default;

 private:
  AnalyticResponse(ResponseKind kind, double a, double b, std::vector<double> coeffs)
      : kind_(kind), a_(a), b_(b), coeffs_(std::move(coeffs)) {}

  ResponseKind kind_ = ResponseKind::identity;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> coeffs_;
};

double response_eval(const AnalyticResponse& r, double lambda);

}  // namespace snsr
