#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causal::cli {

/// Runs one invocation (args excludes the program name). Reports go to
/// `out`, one-line "error:<category>: ..." diagnostics to `err`. Returns 0 on
/// success, 1 when a model fails validation, 2 on usage, IO or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest scientific form with one decimal: 0 -> "0.0e0", 0.004 -> "4.0e-3".
std::string short_scientific(double value);

}  // namespace causal::cli
