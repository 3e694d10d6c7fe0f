#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fibertree::cli {

// Runs one command; `args` excludes the program name. Decision verbs return
// 0 (true) or 1 (false); every error returns 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibertree::cli
