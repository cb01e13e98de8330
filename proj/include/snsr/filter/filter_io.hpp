#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "snsr/filter/chebyshev.hpp"

namespace snsr {

// {"lambda_max": <real>, "theta": [<real>, ...]} with every real written using
// 17 significant digits so the file round-trips exactly.
std::string filter_to_json_text(const ChebyshevFilter& f);
ChebyshevFilter filter_from_json_text(const std::string& text);

void write_filter(std::ostream& out, const ChebyshevFilter& f);
ChebyshevFilter read_filter(std::istream& in);
ChebyshevFilter read_filter_file(const std::filesystem::path& path);

// "%.17g"
std::string format_real(double v);

}  // namespace snsr
