#pragma once

#include <map>
#include <vector>

#include "seqrfm/miner.hpp"
#include "seqrfm/model.hpp"

namespace seqrfm {

/// Antichain of RFM-patterns under sub-sequence containment, bucketed by
/// pattern length so checks only touch buckets that can contain or be
/// contained by the probe.
class MaximalSet {
 public:
  /// Maximal checking: false iff a member already contains `p`. Members
  /// contained in `p` are removed either way. Does not insert.
  bool judge(const Pattern& p);
  /// judge() and, when it passes, insert.
  bool offer(PatternRecord record);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  /// Members sorted by pattern_compare.
  std::vector<PatternRecord> records() const;

 private:
  std::map<std::size_t, std::vector<PatternRecord>> buckets_;
  std::size_t size_ = 0;
};

/// Free-function form of MaximalSet::judge.
inline bool maximal_judge(const Pattern& p, MaximalSet& mrfms) { return mrfms.judge(p); }

struct MaximalResult {
  MiningResult mining;  // mining.patterns holds the maximal patterns
  std::size_t all_patterns = 0;

  /// 1 - |MRFMs| / |RFMs|; 0 when nothing was mined.
  double compression_rate() const;
};

/// Same traversal as mine(); every emission passes through the maximal
/// check. With threads > 1 the check runs as a post-pass over the
/// discovery-ordered emissions.
MaximalResult mine_maximal(const MTDatabase& db, const Params& params, const MinerOptions& options = {});

/// write_run_stats plus "compression_rate=<4 decimals>".
void write_maximal_run_stats(std::ostream& out, const MaximalResult& result);

}  // namespace seqrfm
