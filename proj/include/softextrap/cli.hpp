#pragma once

#include <complex>
#include <ostream>
#include <string>

namespace softextrap {

/// Runs the command-line interface.  Returns 0 on success, 1 on a domain or
/// runtime failure and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "3", "-1.5e2", "2+0.5i", "1-2j" or "3i".
std::complex<double> parse_complex(const std::string& text);

}  // namespace softextrap
