#include "seqrfm/maximal.hpp"

#include <algorithm>
#include <ostream>

#include "seqrfm/io.hpp"

namespace seqrfm {

bool MaximalSet::judge(const Pattern& p) {
  const std::size_t len = p.length();
  bool keep = true;
  for (auto it = buckets_.lower_bound(len); it != buckets_.end() && keep; ++it)
    keep = std::none_of(it->second.begin(), it->second.end(),
                        [&](const PatternRecord& m) { return is_subsequence(p, m.pattern); });
  for (auto it = buckets_.begin(); it != buckets_.end() && it->first <= len; ++it) {
    const auto before = it->second.size();
    std::erase_if(it->second, [&](const PatternRecord& m) { return m.pattern != p && is_subsequence(m.pattern, p); });
    size_ -= before - it->second.size();
  }
  return keep;
}

bool MaximalSet::offer(PatternRecord record) {
  if (!judge(record.pattern)) return false;
  buckets_[record.pattern.length()].push_back(std::move(record));
  ++size_;
  return true;
}

std::vector<PatternRecord> MaximalSet::records() const {
  std::vector<PatternRecord> out;
  out.reserve(size_);
  for (const auto& [len, bucket] : buckets_) out.insert(out.end(), bucket.begin(), bucket.end());
  sort_records(out);
  return out;
}

double MaximalResult::compression_rate() const {
  if (all_patterns == 0) return 0.0;
  return 1.0 - static_cast<double>(mining.patterns.size()) / static_cast<double>(all_patterns);
}

MaximalResult mine_maximal(const MTDatabase& db, const Params& params, const MinerOptions& options) {
  MaximalResult out;
  MaximalSet mrfms;
  if (options.threads > 1) {
    out.mining = mine_parallel(db, params, options);
    out.all_patterns = out.mining.patterns.size();
    for (auto& rec : out.mining.patterns) mrfms.offer(std::move(rec));
  } else {
    out.mining = mine_serial(db, params, options, [&](PatternRecord&& rec) {
      ++out.all_patterns;
      mrfms.offer(std::move(rec));
    });
  }
  out.mining.patterns = mrfms.records();
  return out;
}

void write_maximal_run_stats(std::ostream& out, const MaximalResult& result) {
  write_run_stats(out, result.mining);
  out << "compression_rate=" << format_recency(result.compression_rate()) << '\n';
}

}  // namespace seqrfm
