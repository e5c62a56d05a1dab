#pragma once

#include <string>
#include <vector>

namespace chromatic {

// Exit codes: 0 success, 1 usage error, 2 computation error (for instance a
// degreewise-infinite piece), 3 cross-check mismatch.
struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

}  // namespace chromatic
