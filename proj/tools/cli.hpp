#pragma once

#include <string>
#include <vector>

namespace bsn::cli {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

/// Exit codes: 0 ok, 1 internal error, 2 parse error, 3 domain error,
/// 4 verify mismatch. `args` excludes the program name.
RunResult run(const std::vector<std::string>& args);

}  // namespace bsn::cli
