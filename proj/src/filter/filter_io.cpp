#include "snsr/filter/filter_io.hpp"

#include <fstream>
#include <iterator>
#include <ostream>

#include <fmt/format.h>

#include "json.hpp"

namespace snsr {

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string filter_to_json_text(const ChebyshevFilter& f) {
  std::string out = "{\"lambda_max\": " + format_real(f.lambda_max()) + ", \"theta\": [";
  for (Eigen::Index k = 0; k < f.theta().size(); ++k) {
    if (k > 0) out += ", ";
    out += format_real(f.theta()[k]);
  }
  out += "]}\n";
  return out;
}

ChebyshevFilter filter_from_json_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto theta = j.at("theta").get<std::vector<double>>();
    Vector v = Eigen::Map<const Vector>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    return ChebyshevFilter(std::move(v), j.at("lambda_max").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed filter file: ") + e.what());
  }
}

void write_filter(std::ostream& out, const ChebyshevFilter& f) { out << filter_to_json_text(f); }

ChebyshevFilter read_filter(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return filter_from_json_text(text);
}

ChebyshevFilter read_filter_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "file not found: " + path.string());
  return read_filter(in);
}

}  // namespace snsr
