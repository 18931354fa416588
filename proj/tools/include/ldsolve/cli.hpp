#pragma once

#include <string>
#include <vector>

namespace ldsolve::cli {

enum ExitStatus { kOk = 0, kMismatch = 1, kFailure = 2 };

struct Outcome {
  std::string out;
  std::string err;
  int status = kOk;
};

// Runs one invocation; `args` excludes the program name. `stdin_text` is
// read when the input path is "-".
Outcome run(const std::vector<std::string>& args, const std::string& stdin_text = {});

}  // namespace ldsolve::cli
