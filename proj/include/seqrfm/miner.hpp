#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "seqrfm/chain.hpp"
#include "seqrfm/model.hpp"

namespace seqrfm {

/// Which monetary upper bounds the search may use. Frequency and recency
/// pruning along prefix extensions is always on.
struct StrategyToggles {
  bool use_swm = true;
  bool use_em = true;
  bool use_pm = true;

  static StrategyToggles all_off() { return {false, false, false}; }
};

struct PruneCounters {
  std::int64_t swm = 0;    // 1-sequences dropped by the SWM bound
  std::int64_t em = 0;     // R/F-passing children not expanded because of EM
  std::int64_t pm = 0;     // extension items dropped by PM before generation
  std::int64_t theta = 0;  // S-extension items reachable only through non-compact instances

  PruneCounters& operator+=(const PruneCounters& o) {
    swm += o.swm;
    em += o.em;
    pm += o.pm;
    theta += o.theta;
    return *this;
  }
};

struct MiningResult {
  std::vector<PatternRecord> patterns;
  std::int64_t candidate_count = 0;
  std::int64_t visited_nodes = 0;
  std::chrono::nanoseconds elapsed{0};
  PruneCounters prune;
};

struct MinerOptions {
  StrategyToggles toggles;
  std::size_t max_length = 0;  // maximum items per pattern; 0 = unbounded
  int threads = 1;
};

/// Called once per RFM-pattern, in depth-first discovery order.
using EmitFn = std::function<void(PatternRecord&&)>;

/// Serial reference search. Emits every RFM-pattern through `emit` in
/// depth-first order (I-extensions before S-extensions, ascending items);
/// the returned result carries counters only.
MiningResult mine_serial(const MTDatabase& db, const Params& params, const MinerOptions& options,
                         const EmitFn& emit);

/// OpenMP search over first-level subtrees. Patterns come back in the same
/// order mine_serial would emit them.
MiningResult mine_parallel(const MTDatabase& db, const Params& params, const MinerOptions& options);

/// Mines all compact RFM-patterns; patterns sorted by pattern_compare.
/// Uses mine_parallel when options.threads > 1. Throws std::invalid_argument
/// on bad params.
MiningResult mine(const MTDatabase& db, const Params& params, const MinerOptions& options = {});

struct ExtensionLists {
  std::vector<ItemId> ilist;
  std::vector<ItemId> slist;
};

/// Candidate extension items of a chain: I-items share an ending itemset and
/// follow the last item; S-items occur after an ending position within the
/// theta window. Both ascending and deduplicated. When `pm_floor` is
/// non-negative, items whose PM falls below it are dropped.
ExtensionLists collect_extension_items(const MTChain& chain, const MTDatabase& db, Timestamp theta,
                                       const ItemMask& mask = {}, double pm_floor = -1.0);

/// "key=value" lines: candidates, patterns, prune_swm, prune_em, prune_pm,
/// prune_theta, elapsed_ms.
void write_run_stats(std::ostream& out, const MiningResult& result);

}  // namespace seqrfm
