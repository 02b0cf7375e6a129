#include "seqrfm/measures.hpp"

#include <algorithm>

namespace seqrfm {

namespace {

// Sum of the pattern itemset's items inside the sequence itemset, or -1 when
// the pattern itemset is not a sub-itemset.
Money match_money(const Pattern::Itemset& need, const MTItemset& have) {
  Money sum = 0;
  for (ItemId item : need) {
    const MTItem* hit = have.find(item);
    if (!hit) return -1;
    sum += hit->money;
  }
  return sum;
}

void enumerate(const Pattern& pattern, const MTSequence& seq, std::size_t k, std::size_t from,
               std::vector<std::size_t>& positions, Money money, std::vector<Instance>& out) {
  if (k == pattern.itemset_count()) {
    Instance inst;
    inst.sid = seq.sid();
    inst.positions = positions;
    inst.rt = seq.itemset(positions.front()).timestamp;
    inst.end_pos = positions.back();
    inst.monetary = money;
    out.push_back(std::move(inst));
    return;
  }
  const std::size_t remaining = pattern.itemset_count() - k - 1;
  for (std::size_t pos = from; pos + remaining < seq.size(); ++pos) {
    const Money m = match_money(pattern.itemset(k), seq.itemset(pos));
    if (m < 0) continue;
    positions.push_back(pos);
    enumerate(pattern, seq, k + 1, pos + 1, positions, money + m, out);
    positions.pop_back();
  }
}

}  // namespace

std::vector<Instance> instances_of(const Pattern& pattern, const MTSequence& seq) {
  std::vector<Instance> out;
  if (pattern.empty()) return out;
  std::vector<std::size_t> positions;
  enumerate(pattern, seq, 0, 0, positions, 0, out);
  return out;
}

Timestamp tsp(const Instance& inst, const MTSequence& seq) {
  return seq.itemset(inst.positions.front()).timestamp - seq.itemset(inst.positions.back()).timestamp;
}

std::vector<Instance> admissible_instances(const Pattern& pattern, const MTSequence& seq,
                                           Timestamp theta) {
  auto all = instances_of(pattern, seq);
  std::erase_if(all, [&](const Instance& inst) { return tsp(inst, seq) > theta; });
  return all;
}

double recency(const Pattern& pattern, const MTSequence& seq, double delta, Timestamp theta) {
  double best = 0.0;
  for (const auto& inst : admissible_instances(pattern, seq, theta))
    best = std::max(best, recency_weight(delta, seq.ct() - inst.rt));
  return best;
}

double recency(const Pattern& pattern, const MTDatabase& db, double delta, Timestamp theta) {
  return measure(pattern, db, delta, theta).recency;
}

std::int64_t frequency(const Pattern& pattern, const MTDatabase& db, Timestamp theta) {
  std::int64_t f = 0;
  for (const auto& seq : db.sequences())
    if (!admissible_instances(pattern, seq, theta).empty()) ++f;
  return f;
}

Money monetary(const Pattern& pattern, const MTSequence& seq, Timestamp theta) {
  Money best = 0;
  for (const auto& inst : admissible_instances(pattern, seq, theta)) best = std::max(best, inst.monetary);
  return best;
}

Money monetary(const Pattern& pattern, const MTDatabase& db, Timestamp theta) {
  Money total = 0;
  for (const auto& seq : db.sequences()) total += monetary(pattern, seq, theta);
  return total;
}

PatternStats measure(const Pattern& pattern, const MTDatabase& db, double delta, Timestamp theta) {
  PatternStats st;
  for (const auto& seq : db.sequences()) {
    const auto insts = admissible_instances(pattern, seq, theta);
    if (insts.empty()) continue;
    double r = 0.0;
    Money m = 0;
    for (const auto& inst : insts) {
      r = std::max(r, recency_weight(delta, seq.ct() - inst.rt));
      m = std::max(m, inst.monetary);
    }
    st.recency += r;
    st.frequency += 1;
    st.monetary += m;
  }
  return st;
}

RfmVerdict is_rfm(const Pattern& pattern, const MTDatabase& db, const Params& params) {
  RfmVerdict v;
  v.stats = measure(pattern, db, params.delta, params.theta);
  v.is_rfm = v.stats.frequency > 0 && meets(v.stats, Thresholds::derive(params, db));
  return v;
}

}  // namespace seqrfm
