#include "snsr/filter/response.hpp"

#include <cmath>
#include <sstream>

namespace snsr {

std::string to_string(ResponseKind k) {
  switch (k) {
    case ResponseKind::diffusion: return "diffusion";
    case ResponseKind::highpass: return "highpass";
    case ResponseKind::gaussian_bandpass: return "gaussian_bandpass";
    case ResponseKind::identity: return "identity";
    case ResponseKind::polynomial: return "polynomial";
  }
  return "identity";
}

ResponseKind response_kind_from_string(const std::string& s) {
  if (s == "diffusion") return ResponseKind::diffusion;
  if (s == "highpass") return ResponseKind::highpass;
  if (s == "gaussian_bandpass" || s == "bandpass") return ResponseKind::gaussian_bandpass;
  if (s == "identity") return ResponseKind::identity;
  if (s == "polynomial") return ResponseKind::polynomial;
  throw Error(ErrorCode::invalid_argument, "unknown response kind: " + s);
}

namespace {

void require_positive(double v, const char* name) {
  require(std::isfinite(v) && v > 0.0, ErrorCode::invalid_argument,
          std::string(name) + " must be a positive finite number");
}

}  // namespace

AnalyticResponse AnalyticResponse::diffusion(double tau) {
  require_positive(tau, "diffusion tau");
  return AnalyticResponse(ResponseKind::diffusion, tau, 0.0, {});
}

AnalyticResponse AnalyticResponse::highpass(double beta) {
  require_positive(beta, "highpass beta");
  return AnalyticResponse(ResponseKind::highpass, beta, 0.0, {});
}

AnalyticResponse AnalyticResponse::gaussian_bandpass(double center, double width) {
  require(std::isfinite(center) && center >= 0.0, ErrorCode::invalid_argument,
          "bandpass center must be >= 0");
  require_positive(width, "bandpass width");
  return AnalyticResponse(ResponseKind::gaussian_bandpass, center, width, {});
}

AnalyticResponse AnalyticResponse::identity() {
  return AnalyticResponse(ResponseKind::identity, 0.0, 0.0, {});
}

AnalyticResponse AnalyticResponse::polynomial(std::vector<double> coeffs) {
  require(!coeffs.empty(), ErrorCode::invalid_argument, "polynomial needs at least one coefficient");
  for (double c : coeffs) {
    require(std::isfinite(c), ErrorCode::invalid_argument, "polynomial coefficient not finite");
  }
  return AnalyticResponse(ResponseKind::polynomial, 0.0, 0.0, std::move(coeffs));
}

double AnalyticResponse::operator()(double lambda) const {
  switch (kind_) {
    case ResponseKind::diffusion: return 1.0 / (1.0 + a_ * lambda);
    case ResponseKind::highpass: return lambda / (lambda + a_);
    case ResponseKind::gaussian_bandpass: {
      const double d = lambda - a_;
      return std::exp(-d * d / (2.0 * b_ * b_));
    }
    case ResponseKind::identity: return 1.0;
    case ResponseKind::polynomial: {
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lambda + *it;
      return acc;
    }
  }
  return 0.0;
}

ResponseFn AnalyticResponse::as_function() const {
  return [r = *this](double lambda) { return r(lambda); };
}

double response_eval(const AnalyticResponse& r, double lambda) { return r(lambda); }

nlohmann::json AnalyticResponse::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  switch (kind_) {
    case ResponseKind::diffusion: params["tau"] = a_; break;
    case ResponseKind::highpass: params["beta"] = a_; break;
    case ResponseKind::gaussian_bandpass:
      params["center"] = a_;
      params["width"] = b_;
      break;
    case ResponseKind::identity: break;
    case ResponseKind::polynomial: params["coeffs"] = coeffs_; break;
  }
  return {{"kind", to_string(kind_)}, {"params", params}};
}

AnalyticResponse AnalyticResponse::from_json(const nlohmann::json& j) {
  try {
    const ResponseKind kind = response_kind_from_string(j.at("kind").get<std::string>());
    const nlohmann::json params = j.contains("params") ? j.at("params") : nlohmann::json::object();
    switch (kind) {
      case ResponseKind::diffusion: return diffusion(params.at("tau").get<double>());
      case ResponseKind::highpass: return highpass(params.at("beta").get<double>());
      case ResponseKind::gaussian_bandpass:
        return gaussian_bandpass(params.at("center").get<double>(),
                                 params.at("width").get<double>());
      case ResponseKind::identity: return identity();
      case ResponseKind::polynomial:
        return polynomial(params.at("coeffs").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed response: ") + e.what());
  }
  return identity();
}

AnalyticResponse AnalyticResponse::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  nlohmann::json params = nlohmann::json::object();
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      require(eq != std::string::npos, ErrorCode::parse, "response spec: expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      try {
        if (key == "coeffs") {
          std::vector<double> coeffs;
          std::stringstream cs(value);
          std::string c;
          while (std::getline(cs, c, ';')) coeffs.push_back(std::stod(c));
          params[key] = coeffs;
        } else {
          params[key] = std::stod(value);
        }
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::parse, "response spec: bad number in '" + item + "'");
      }
    }
  }
  return from_json({{"kind", kind}, {"params", params}});
}

}  // namespace snsr
