#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace poislin::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInputError = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Degree cap from POIS_MAX_DEGREE (default 12). Throws PreconditionError
/// when the variable is set but not a positive integer.
unsigned max_degree_cap();

}  // namespace poislin::cli
