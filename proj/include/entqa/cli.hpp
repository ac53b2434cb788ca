#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entqa::cli {

/// Exit codes: 0 success, 2 usage, 3 data, 4 network. Failures print a
/// one-line JSON error object on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entqa::cli
