#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nfold {
namespace cli {

/// Exit codes: 0 answer, 2 infeasible, 3 infinite-if-nonempty,
/// 4 validation error, 5 budget / unsupported / failed self-check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace nfold
