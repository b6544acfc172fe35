#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace eff {

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string out;
    std::string err;
};

/// Run argv[0] with the given arguments (no shell), capturing stdout and
/// stderr. The child is killed once the timeout elapses. An optional working
/// directory isolates the invocation.
CommandResult run_command(const std::vector<std::string>& argv, std::chrono::milliseconds timeout,
                          const std::filesystem::path& working_dir = {});

} // namespace eff
