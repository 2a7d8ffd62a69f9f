#include <cstdio>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = vfdeg::cli::run(args);
    bool wrote_file = false;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--out") wrote_file = true;
    if (!wrote_file && !result.report.empty())
        std::printf("%s\n", result.report.dump(2).c_str());
    std::fprintf(stderr, "%s\n", result.summary.c_str());
    return result.exit_code;
}
