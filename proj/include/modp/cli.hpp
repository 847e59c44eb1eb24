#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "modp/numerics.hpp"

namespace modp::cli {

inline constexpr std::string_view kToolVersion = "modp-1.0.0";

// Runs one command line (without the program name). Exit codes: 0 all checks
// passed, 1 a verification check failed, 2 usage or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Complex literal "re", "imi" or "re+imi" / "re-imi".
Complex parse_complex(std::string_view text);
// Comma-separated real grid.
std::vector<double> parse_grid(std::string_view text);

}  // namespace modp::cli
