#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmk::cli {

// args excludes the program name. Returns 0 when every check passes, 1 on a
// verification failure and 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wmk::cli
