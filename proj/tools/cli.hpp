#pragma once

#include <ostream>

namespace cpat::cli {

/// Exit codes of the command line tool.
enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kValidation = 2,
    kSolve = 3,
    kVerify = 4,
    kPolyhedron = 5,
};

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cpat::cli
