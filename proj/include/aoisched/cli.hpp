#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aoisched {

// Exit codes: 0 success, 1 internal failure, 2 invalid input / infeasible
// instance / usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

// Full CLI entry point, callable in-process for tests. argv excludes the
// program name. Output and diagnostics go to the provided streams.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

// Human-readable balancing/amendment narration used by the trace subcommand.
std::string trace_report(const std::string& instance_json_text);

} // namespace aoisched
