#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shoulder/error.hpp"
#include "shoulder/features.hpp"

namespace shoulder::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad flags, I/O failures
  kExitFormat = 2,      // malformed input file
  kExitValidation = 3,  // well-formed input violating an invariant
  kExitDegenerate = 4,  // run finished but some cells could not be computed
};

int exit_code_for(ErrorKind kind);

/// `key = value` overrides for FeatureParams; unknown keys are format errors.
FeatureParams parse_feature_params(std::string_view bytes, std::string_view origin = "params");

/// Runs one subcommand: simulate | extract | compare | report.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shoulder::cli
