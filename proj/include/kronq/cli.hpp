#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kronq::cli {

// Exit codes: 0 ok / holds, 1 axiom fails, 2 usage, parse or shape error,
// 3 SVD non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kronq::cli
