#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qg::cli {

// Runs one command line (without argv[0]) against the given streams.
// Exit codes: 0 success / property holds, 1 property fails, 2 usage or
// format error.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace qg::cli
