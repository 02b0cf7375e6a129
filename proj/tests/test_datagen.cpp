#include <doctest.h>

#include <cmath>
#include <sstream>

#include "seqrfm/datagen.hpp"
#include "seqrfm/io.hpp"

using namespace seqrfm;

TEST_CASE("sequence count is echoed") {
  GenParams gp;
  gp.sequence_count = 6;
  CHECK(generate(gp).size() == 6);
}

TEST_CASE("same seed, same database") {
  GenParams gp;
  gp.sequence_count = 200;
  gp.seed = 42;
  CHECK(generate(gp) == generate(gp));
  GenParams other = gp;
  other.seed = 43;
  CHECK_FALSE(generate(gp) == generate(other));
}

TEST_CASE("itemsets per sequence hit the target") {
  GenParams gp;
  gp.sequence_count = 10000;
  gp.distinct_items = 500;
  gp.avg_itemsets = 6.2;
  gp.seed = 3;
  const auto st = db_stats(generate(gp));
  CHECK(std::abs(st.avg_itemsets_per_sequence - 6.2) / 6.2 < 0.05);
}

TEST_CASE("property: generated databases are valid and near their means") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    GenParams gp;
    gp.sequence_count = 5000;
    gp.distinct_items = 50 + 25 * seed;
    gp.avg_itemsets = 2.0 + static_cast<double>(seed);
    gp.avg_items = 1.0 + 0.5 * static_cast<double>(seed);
    gp.money_min = 5;
    gp.money_max = 50;
    gp.ts_min = 10;
    gp.ts_max = 500;
    gp.seed = seed;
    const auto db = generate(gp);
    CHECK(validate_database(db).empty());
    const auto st = db_stats(db);
    CHECK(std::abs(st.avg_itemsets_per_sequence - gp.avg_itemsets) / gp.avg_itemsets < 0.05);
    CHECK(std::abs(st.avg_items_per_itemset - gp.avg_items) / gp.avg_items < 0.05);
    const double want_len = gp.avg_itemsets * gp.avg_items;
    CHECK(std::abs(st.avg_sequence_length - want_len) / want_len < 0.05);
    for (const auto& s : db.sequences())
      for (const auto& is : s.itemsets()) {
        CHECK(is.timestamp >= gp.ts_min);
        CHECK(is.timestamp <= gp.ts_max);
        for (const auto& it : is.items) {
          CHECK(it.money >= gp.money_min);
          CHECK(it.money <= gp.money_max);
        }
      }
  }
}

TEST_CASE("infeasible parameters") {
  GenParams gp;
  gp.distinct_items = 2;
  gp.avg_items = 3;
  CHECK_THROWS_AS(generate(gp), std::invalid_argument);
  gp = {};
  gp.sequence_count = 0;
  CHECK_THROWS_AS(check_gen_params(gp), std::invalid_argument);
  gp = {};
  gp.avg_itemsets = 0.5;
  CHECK_THROWS_AS(check_gen_params(gp), std::invalid_argument);
  gp = {};
  gp.money_min = 10;
  gp.money_max = 5;
  CHECK_THROWS_AS(check_gen_params(gp), std::invalid_argument);
  gp = {};
  gp.ts_min = 10;
  gp.ts_max = 5;
  CHECK_THROWS_AS(check_gen_params(gp), std::invalid_argument);
}

TEST_CASE("written output carries a header and parses back") {
  GenParams gp;
  gp.sequence_count = 20;
  gp.seed = 9;
  const auto db = generate(gp);
  std::ostringstream out;
  write_generated(out, db, gp);
  const auto s = out.str();
  CHECK(s.rfind("# generator=mt19937_64 seed=9\n", 0) == 0);
  CHECK(parse_mt_database(s) == db);
}
