#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blab {

inline constexpr int kJsonSchemaVersion = 1;

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 usage or input error, 2 NoSolution / NoRepresentative verdicts.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// BRACKETLAB_MAX_DEGREE, default 8.
int max_degree_from_env();

}  // namespace blab
