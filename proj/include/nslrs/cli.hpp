#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nslrs/nscore.hpp"

namespace nslrs {

inline constexpr int kExitStandard = 0;
inline constexpr int kExitNonstandard = 10;
inline constexpr int kExitError = 2;

/// Runs the command line; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Coprime pairs with q <= q_max, n <= n_max, ordered by q then n.
std::vector<std::pair<u64, u64>> sweep_pairs(u64 q_max, u64 n_max);

/// JSON-lines catalog of the sweep, one line per pair in sweep_pairs order.
std::string sweep_catalog(u64 q_max, u64 n_max, const SearchBudget& budget, unsigned workers);

}  // namespace nslrs
