#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace vfdeg::cli {

inline constexpr const char* tool_version = "vfdeg 0.1.0";

struct RunResult {
    int exit_code = 0;                  // 0 ok, 1 verification failed,
                                        // 2 numerical failure, 3 input error
    nlohmann::ordered_json report;
    std::string summary;
};

// Runs one CLI invocation (argv without the program name). Never throws;
// errors land in the exit code and report.
RunResult run(const std::vector<std::string>& args);

} // namespace vfdeg::cli
