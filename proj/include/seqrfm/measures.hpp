#pragma once

#include <cstddef>
#include <vector>

#include "seqrfm/model.hpp"

// Definition-level R/F/M evaluation by explicit instance enumeration.
// Exponential in pattern length; used as ground truth, not for mining.

namespace seqrfm {

struct Instance {
  int sid = 0;
  std::vector<std::size_t> positions;  // 0-based itemset indices, strictly increasing
  Timestamp rt = 0;                    // timestamp of itemset at positions.front()
  std::size_t end_pos = 0;             // positions.back()
  Money monetary = 0;                  // sum of matched items' money
};

std::vector<Instance> instances_of(const Pattern& pattern, const MTSequence& seq);

/// Timestamp of the first matched itemset minus that of the last.
Timestamp tsp(const Instance& inst, const MTSequence& seq);

std::vector<Instance> admissible_instances(const Pattern& pattern, const MTSequence& seq,
                                           Timestamp theta);

double recency(const Pattern& pattern, const MTSequence& seq, double delta, Timestamp theta);
double recency(const Pattern& pattern, const MTDatabase& db, double delta, Timestamp theta);

std::int64_t frequency(const Pattern& pattern, const MTDatabase& db, Timestamp theta);

Money monetary(const Pattern& pattern, const MTSequence& seq, Timestamp theta);
Money monetary(const Pattern& pattern, const MTDatabase& db, Timestamp theta);

/// All three measures in one pass over the database.
PatternStats measure(const Pattern& pattern, const MTDatabase& db, double delta, Timestamp theta);

struct RfmVerdict {
  bool is_rfm = false;
  PatternStats stats;
};

RfmVerdict is_rfm(const Pattern& pattern, const MTDatabase& db, const Params& params);

}  // namespace seqrfm
