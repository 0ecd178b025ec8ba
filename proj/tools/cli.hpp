#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcorr::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kParseError = 2,
    kInvalidState = 3,
};

/// Entry point shared by the executable and the in-process tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
