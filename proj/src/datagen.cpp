#include "seqrfm/datagen.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "seqrfm/io.hpp"

namespace seqrfm {

void check_gen_params(const GenParams& gp) {
  if (gp.sequence_count < 1) throw std::invalid_argument("sequence count must be >= 1");
  if (gp.distinct_items < 1) throw std::invalid_argument("distinct items must be >= 1");
  if (!(gp.avg_itemsets >= 1.0)) throw std::invalid_argument("average itemsets per sequence must be >= 1");
  if (!(gp.avg_items >= 1.0)) throw std::invalid_argument("average items per itemset must be >= 1");
  if (gp.avg_items > static_cast<double>(gp.distinct_items))
    throw std::invalid_argument("average items per itemset exceeds distinct items");
  if (gp.money_min < 0 || gp.money_min > gp.money_max) throw std::invalid_argument("invalid monetary range");
  if (gp.ts_min < 0 || gp.ts_min > gp.ts_max) throw std::invalid_argument("invalid timestamp range");
}

MTDatabase generate(const GenParams& gp) {
  check_gen_params(gp);
  std::mt19937_64 rng(gp.seed);
  std::geometric_distribution<std::size_t> extra_itemsets(1.0 / gp.avg_itemsets);
  std::geometric_distribution<std::size_t> extra_items(1.0 / gp.avg_items);
  std::uniform_int_distribution<std::size_t> pick_item(1, gp.distinct_items);
  std::uniform_int_distribution<Money> pick_money(gp.money_min, gp.money_max);
  std::uniform_int_distribution<Timestamp> pick_ts(gp.ts_min, gp.ts_max);

  std::vector<RawSequence> raw(gp.sequence_count);
  std::vector<std::size_t> chosen;
  std::vector<Timestamp> stamps;
  for (auto& seq : raw) {
    const std::size_t n_itemsets = 1 + extra_itemsets(rng);
    stamps.resize(n_itemsets);
    for (auto& ts : stamps) ts = pick_ts(rng);
    std::sort(stamps.begin(), stamps.end(), std::greater<>());
    seq.resize(n_itemsets);
    for (std::size_t k = 0; k < n_itemsets; ++k) {
      const std::size_t n_items = std::min(gp.distinct_items, 1 + extra_items(rng));
      chosen.clear();
      while (chosen.size() < n_items) {
        const std::size_t item = pick_item(rng);
        if (std::find(chosen.begin(), chosen.end(), item) == chosen.end()) chosen.push_back(item);
      }
      seq[k].timestamp = stamps[k];
      for (std::size_t item : chosen) seq[k].items.emplace_back(std::to_string(item), pick_money(rng));
    }
  }
  return MTDatabase::from_raw(raw);
}

void write_generated(std::ostream& out, const MTDatabase& db, const GenParams& gp) {
  out << "# generator=" << kGeneratorAlgorithm << " seed=" << gp.seed << '\n'
      << "# sequences=" << gp.sequence_count << " items=" << gp.distinct_items
      << " avg_itemsets=" << gp.avg_itemsets << " avg_items=" << gp.avg_items << '\n'
      << "# money=" << gp.money_min << ".." << gp.money_max << " timestamps=" << gp.ts_min << ".." << gp.ts_max
      << '\n';
  write_mt_database(out, db);
}

}  // namespace seqrfm
