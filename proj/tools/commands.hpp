#pragma once

#include <iosfwd>

namespace rkhs::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rkhs::cli
