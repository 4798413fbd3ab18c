#pragma once

#include <atomic>
#include <ostream>
#include <string>
#include <vector>

namespace csft {

/// Exit codes shared by every verb.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int counterexample = 2;
inline constexpr int resume_refused = 3;
inline constexpr int usage = 64;
inline constexpr int interrupted = 130;
}  // namespace exit_code

/// Parses `args` (without the program name) and runs the selected verb.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::atomic<bool>* cancel = nullptr);

}  // namespace csft
