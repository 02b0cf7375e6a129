#include "seqrfm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqrfm/measures.hpp"

namespace seqrfm {

namespace {

struct Evaluation {
  PatternStats stats;
  std::vector<int> sids;  // sequences holding an admissible instance
};

Evaluation evaluate(const Pattern& p, const MTDatabase& db, const std::vector<int>& scope, const Params& params) {
  Evaluation ev;
  for (int sid : scope) {
    const auto& seq = db.sequence(sid);
    const auto insts = admissible_instances(p, seq, params.theta);
    if (insts.empty()) continue;
    double r = 0.0;
    Money m = 0;
    for (const auto& inst : insts) {
      r = std::max(r, recency_weight(params.delta, seq.ct() - inst.rt));
      m = std::max(m, inst.monetary);
    }
    ev.stats.recency += r;
    ev.stats.frequency += 1;
    ev.stats.monetary += m;
    ev.sids.push_back(sid);
  }
  return ev;
}

class Enumerator {
 public:
  Enumerator(const MTDatabase& db, const Params& params, std::size_t max_length)
      : db_(db), params_(params), t_(Thresholds::derive(params, db)), max_length_(max_length) {}

  std::vector<PatternRecord> run() {
    std::vector<int> all(db_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i + 1);
    for (ItemId item = 0; item < db_.item_universe(); ++item) consider(Pattern::single(item), all);
    sort_records(out_);
    return std::move(out_);
  }

 private:
  void consider(const Pattern& p, const std::vector<int>& scope) {
    auto ev = evaluate(p, db_, scope, params_);
    if (ev.stats.frequency == 0 || static_cast<double>(ev.stats.frequency) < t_.frequency) return;
    if (meets(ev.stats, t_)) out_.push_back({p, ev.stats});
    if (p.length() >= max_length_) return;
    for (ItemId item = p.last_item() + 1; item < db_.item_universe(); ++item) consider(p.i_extended(item), ev.sids);
    for (ItemId item = 0; item < db_.item_universe(); ++item) consider(p.s_extended(item), ev.sids);
  }

  const MTDatabase& db_;
  const Params& params_;
  Thresholds t_;
  std::size_t max_length_;
  std::vector<PatternRecord> out_;
};

}  // namespace

std::vector<PatternRecord> oracle_mine(const MTDatabase& db, const Params& params, std::size_t max_length,
                                       double budget) {
  check_params(params);
  if (max_length < 1) throw std::invalid_argument("oracle max length must be >= 1");
  const double space = std::pow(static_cast<double>(db.item_universe()), static_cast<double>(max_length));
  if (space > budget)
    throw OracleBudgetExceeded("oracle search space " + std::to_string(db.item_universe()) + "^" +
                               std::to_string(max_length) + " exceeds budget");
  return Enumerator(db, params, max_length).run();
}

std::vector<PatternRecord> antichain(const std::vector<PatternRecord>& records) {
  std::vector<PatternRecord> out;
  for (const auto& a : records) {
    const bool dominated = std::any_of(records.begin(), records.end(), [&](const PatternRecord& b) {
      return a.pattern != b.pattern && is_subsequence(a.pattern, b.pattern);
    });
    if (!dominated) out.push_back(a);
  }
  sort_records(out);
  return out;
}

std::vector<PatternRecord> oracle_mine_maximal(const MTDatabase& db, const Params& params,
                                               std::size_t max_length, double budget) {
  return antichain(oracle_mine(db, params, max_length, budget));
}

}  // namespace seqrfm
