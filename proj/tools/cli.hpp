#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nckepler::cli {

// Exit codes: 0 success / all pass, 1 runtime failure or failing checks, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nckepler::cli
