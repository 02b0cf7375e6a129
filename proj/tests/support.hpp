#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "seqrfm/io.hpp"
#include "seqrfm/model.hpp"

namespace seqrfm::testing {

inline constexpr std::string_view kExampleDb =
    "<100> a:2 d:10 -1 <74> a:19 d:20 f:13 -1 <45> f:40 -1 <12> b:15 -1 -2\n"
    "<100> a:15 d:24 -1 <95> g:50 -1 <81> b:17 -1 -2\n"
    "<96> a:11 -1 <62> c:21 -1 <58> a:25 -1 <43> c:19 -1 -2\n"
    "<70> b:8 c:15 -1 <62> b:25 c:12 -1 <58> f:15 -1 -2\n"
    "<98> a:10 -1 <92> a:21 f:30 -1 -2\n"
    "<100> c:15 -1 <92> a:20 d:22 -1 <80> a:20 d:21 -1 <71> a:30 b:10 -1 -2\n";

inline const MTDatabase& example_db() {
  static const MTDatabase db = parse_mt_database(kExampleDb);
  return db;
}

inline Pattern pat(const MTDatabase& db, std::string_view text) { return parse_pattern(text, db.dictionary()); }

struct RandomDbShape {
  int max_sequences = 50;
  int max_items = 12;
  int max_itemsets = 8;
  int max_items_per_itemset = 3;
  int max_gap = 20;  // timestamp step; 0 steps make equal adjacent timestamps
  int max_money = 30;
};

/// Small random database for differential tests. Item tokens are letters.
inline MTDatabase random_db(std::uint64_t seed, const RandomDbShape& shape = {}) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n_seq = uni(1, shape.max_sequences);
  const int n_items = uni(2, shape.max_items);
  std::vector<RawSequence> raw(static_cast<std::size_t>(n_seq));
  for (auto& seq : raw) {
    const int n_is = uni(1, shape.max_itemsets);
    long ts = uni(50, 200);
    for (int k = 0; k < n_is; ++k) {
      RawItemset is;
      is.timestamp = ts;
      ts = std::max(0L, ts - uni(0, shape.max_gap));
      const int want = uni(1, std::min(shape.max_items_per_itemset, n_items));
      std::vector<int> chosen;
      while (static_cast<int>(chosen.size()) < want) {
        const int item = uni(0, n_items - 1);
        if (std::find(chosen.begin(), chosen.end(), item) == chosen.end()) chosen.push_back(item);
      }
      for (int item : chosen) is.items.emplace_back(std::string(1, static_cast<char>('a' + item)), uni(0, shape.max_money));
      seq.push_back(std::move(is));
    }
  }
  return MTDatabase::from_raw(raw);
}

}  // namespace seqrfm::testing
