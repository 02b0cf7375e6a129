#pragma once

#include <cstdint>
#include <iosfwd>

#include "seqrfm/model.hpp"

namespace seqrfm {

/// Pseudo-random engine recorded in generated file headers.
inline constexpr const char* kGeneratorAlgorithm = "mt19937_64";

struct GenParams {
  std::size_t sequence_count = 1000;
  std::size_t distinct_items = 100;
  double avg_itemsets = 5.0;  // mean itemsets per sequence
  double avg_items = 2.0;     // mean items per itemset
  Money money_min = 1;
  Money money_max = 100;
  Timestamp ts_min = 0;
  Timestamp ts_max = 1000;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument for infeasible parameters.
void check_gen_params(const GenParams& gp);

/// Itemset and item counts are 1 + Geometric(1/mean) (item counts capped at
/// distinct_items); items are drawn uniformly without replacement; money is
/// uniform; timestamps are uniform and sorted non-increasing per sequence.
/// Item tokens are the decimal integers 1..distinct_items.
MTDatabase generate(const GenParams& gp);

/// Database text preceded by '#' lines recording the generator and params.
void write_generated(std::ostream& out, const MTDatabase& db, const GenParams& gp);

}  // namespace seqrfm
