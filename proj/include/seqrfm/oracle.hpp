#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "seqrfm/model.hpp"

// Exhaustive reference miner. Evaluates every candidate pattern straight
// from the measure definitions; the only pruning it performs is frequency
// anti-monotonicity. It never consults SWM, EM or PM.

namespace seqrfm {

inline constexpr double kDefaultOracleBudget = 5e6;
inline constexpr std::size_t kDefaultOracleMaxLength = 8;

/// Thrown when |distinct items|^maxLen exceeds the budget.
class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every compact RFM-pattern of at most `max_length` items, sorted by
/// pattern_compare.
std::vector<PatternRecord> oracle_mine(const MTDatabase& db, const Params& params,
                                       std::size_t max_length = kDefaultOracleMaxLength,
                                       double budget = kDefaultOracleBudget);

/// oracle_mine reduced to its maximal antichain by pairwise containment.
std::vector<PatternRecord> oracle_mine_maximal(const MTDatabase& db, const Params& params,
                                               std::size_t max_length = kDefaultOracleMaxLength,
                                               double budget = kDefaultOracleBudget);

/// Pairwise-containment antichain of an arbitrary record list.
std::vector<PatternRecord> antichain(const std::vector<PatternRecord>& records);

}  // namespace seqrfm
