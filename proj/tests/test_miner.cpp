#include <doctest.h>

#include <sstream>

#include "seqrfm/chain.hpp"
#include "seqrfm/io.hpp"
#include "seqrfm/miner.hpp"
#include "seqrfm/oracle.hpp"
#include "support.hpp"

using namespace seqrfm;
using seqrfm::testing::pat;
using seqrfm::testing::example_db;

namespace {

constexpr Timestamp kInf = kUnboundedSpan;

ItemId id(std::string_view token) { return example_db().dictionary().id(token); }

std::vector<ItemId> ids(std::initializer_list<std::string_view> tokens) {
  std::vector<ItemId> out;
  for (auto t : tokens) out.push_back(id(t));
  return out;
}

std::string text(const MTDatabase& db, std::vector<PatternRecord> recs) {
  return serialize_result(std::move(recs), db.dictionary());
}

void check_same(const std::vector<PatternRecord>& got, const std::vector<PatternRecord>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t k = 0; k < got.size(); ++k) {
    CHECK(got[k].pattern == want[k].pattern);
    CHECK(got[k].stats.frequency == want[k].stats.frequency);
    CHECK(got[k].stats.monetary == want[k].stats.monetary);
    CHECK(std::abs(got[k].stats.recency - want[k].stats.recency) < 1e-9);
  }
}

MinerOptions capped(std::size_t len, StrategyToggles t = {}) {
  MinerOptions o;
  o.toggles = t;
  o.max_length = len;
  return o;
}

}  // namespace

TEST_CASE("example database problem statement parameters agree with the oracle") {
  const Params p{0.1, 1.44, 0.2, 0.25, 60};
  const auto r = mine(example_db(), p);
  check_same(r.patterns, oracle_mine(example_db(), p));
  // g occurs in one sequence only, so nothing with g can reach F = 2 or 3.
  for (const auto& rec : r.patterns)
    for (const auto& is : rec.pattern.itemsets()) CHECK(std::find(is.begin(), is.end(), id("g")) == is.end());
}

TEST_CASE("full enumeration up to three items agrees with the oracle") {
  const Params p{0.01, 0, 0, 0, kInf};
  const auto r = mine(example_db(), p, capped(3));
  const auto want = oracle_mine(example_db(), p, 3);
  check_same(r.patterns, want);
  CHECK(r.patterns.size() > 50);
}

TEST_CASE("no pattern can occur in every sequence of the example database") {
  const auto r = mine(example_db(), {0.01, 0, 1.0, 0, kInf});
  CHECK(r.patterns.empty());
  CHECK_THROWS_AS(mine(example_db(), {0.01, 0, 1.01, 0, kInf}), std::invalid_argument);
  CHECK_THROWS_AS(mine(example_db(), {1.0, 0, 0, 0, kInf}), std::invalid_argument);
}

TEST_CASE("PM decides whether <{c},{a}> is generated") {
  const auto& db = example_db();
  const auto c = build_initial_chains(db, kInf).at(id("c"));
  const auto strict = collect_extension_items(c, db, kInf, {}, 250);
  CHECK(std::find(strict.slist.begin(), strict.slist.end(), id("a")) == strict.slist.end());
  const auto loose = collect_extension_items(c, db, kInf, {}, 200);
  CHECK(std::find(loose.slist.begin(), loose.slist.end(), id("a")) != loose.slist.end());
}

TEST_CASE("extension items of <{a}>") {
  const auto& db = example_db();
  const auto a = build_initial_chains(db, kInf).at(id("a"));
  const auto lists = collect_extension_items(a, db, kInf);
  CHECK(lists.ilist == ids({"b", "d", "f"}));
  CHECK(lists.slist == ids({"a", "b", "c", "d", "f", "g"}));
  const auto zero = collect_extension_items(build_initial_chains(db, 0).at(id("a")), db, 0);
  CHECK(zero.slist.empty());
}

TEST_CASE("nothing follows the last itemset") {
  const auto db = parse_mt_database("<100> a:15 d:24 -1 <95> g:50 -1 <81> b:17 -1 -2");
  const auto b = build_initial_chains(db, kInf).at(db.dictionary().id("b"));
  const auto lists = collect_extension_items(b, db, kInf);
  CHECK(lists.slist.empty());
  CHECK(lists.ilist.empty());
}

TEST_CASE("a node with no extensions has no children") {
  const auto db = parse_mt_database("<10> x:5 -1 -2");
  const auto r = mine(db, {});
  REQUIRE(r.patterns.size() == 1);
  CHECK(r.candidate_count == 1);
  CHECK(r.visited_nodes == 1);
}

TEST_CASE("empty database") {
  const auto r = mine(MTDatabase{}, {});
  CHECK(r.patterns.empty());
  CHECK(r.candidate_count == 0);
}

TEST_CASE("toggles off emit the same set with at least as many candidates") {
  const Params p{0.01, 0.5, 0.2, 0.2, 60};
  const auto on = mine(example_db(), p);
  const auto off = mine(example_db(), p, {StrategyToggles::all_off()});
  check_same(on.patterns, off.patterns);
  CHECK(on.candidate_count <= off.candidate_count);
  CHECK(off.prune.swm == 0);
  CHECK(off.prune.em == 0);
  CHECK(off.prune.pm == 0);
}

TEST_CASE("max length cap") {
  const auto r = mine(example_db(), {}, capped(2));
  for (const auto& rec : r.patterns) CHECK(rec.pattern.length() <= 2);
  CHECK(mine(example_db(), {}, capped(1)).patterns.size() == 6);
}

TEST_CASE("serial emission order is depth first") {
  const auto& db = example_db();
  std::vector<Pattern> order;
  mine_serial(db, {0.01, 0, 0.5, 0, kInf}, {}, [&](PatternRecord&& r) { order.push_back(r.pattern); });
  REQUIRE(order.size() >= 2);
  CHECK(order.front() == pat(db, "{a}"));
  // Every pattern but a root follows its parent somewhere earlier.
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k].length() == 1) continue;
    bool seen_prefix = false;
    for (std::size_t j = 0; j < k; ++j) seen_prefix = seen_prefix || is_subsequence(order[j], order[k]);
    CHECK(seen_prefix);
  }
}

TEST_CASE("run statistics keys") {
  const auto r = mine(example_db(), {0.01, 0, 0.5, 0, kInf});
  std::ostringstream out;
  write_run_stats(out, r);
  const auto s = out.str();
  for (const char* key : {"candidates=", "patterns=", "prune_swm=", "prune_em=", "prune_pm=", "prune_theta=", "elapsed_ms="})
    CHECK(s.find(key) != std::string::npos);
  CHECK(s.find("patterns=" + std::to_string(r.patterns.size()) + "\n") != std::string::npos);
}

TEST_CASE("property: miner equals oracle on random databases") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    seqrfm::testing::RandomDbShape shape;
    shape.max_sequences = 15;
    shape.max_items = 5;
    shape.max_itemsets = 5;
    const auto db = seqrfm::testing::random_db(seed, shape);
    const Params p{0.01 * static_cast<double>(seed % 3), seed % 4 == 0 ? 0.3 * static_cast<double>(db.size()) : 0.0,
                   0.1 * static_cast<double>(seed % 4), 0.05 * static_cast<double>(seed % 5),
                   seed % 3 == 0 ? kInf : static_cast<Timestamp>(seed % 17)};
    const auto r = mine(db, p, capped(4));
    check_same(r.patterns, oracle_mine(db, p, 4));
    CHECK(r.candidate_count >= static_cast<std::int64_t>(r.patterns.size()));
  }
}

TEST_CASE("property: raising a threshold never adds a pattern") {
  for (std::uint64_t seed = 50; seed < 70; ++seed) {
    const auto db = seqrfm::testing::random_db(seed, {20, 6, 5, 3, 20, 30});
    const Params base{0.05, 0.0, 0.1, 0.05, 30};
    std::vector<Pattern> all;
    for (const auto& rec : mine(db, base, capped(4)).patterns) all.push_back(rec.pattern);
    // Stats may shift when theta shrinks; only membership is monotone.
    auto subset_of_base = [&](const Params& p) {
      for (const auto& rec : mine(db, p, capped(4)).patterns)
        CHECK(std::binary_search(all.begin(), all.end(), rec.pattern));
    };
    subset_of_base({0.05, 0.5, 0.1, 0.05, 30});
    subset_of_base({0.05, 0.0, 0.3, 0.05, 30});
    subset_of_base({0.05, 0.0, 0.1, 0.2, 30});
    subset_of_base({0.05, 0.0, 0.1, 0.05, 10});
  }
}

TEST_CASE("property: recency never grows along an extension") {
  for (std::uint64_t seed = 80; seed < 100; ++seed) {
    const auto db = seqrfm::testing::random_db(seed, {12, 4, 5, 2, 15, 20});
    const Timestamp theta = seed % 2 ? kInf : 12;
    const ItemId n = static_cast<ItemId>(db.item_universe());
    for (auto& [item, chain] : build_initial_chains(db, theta)) {
      const TreeNode node{chain};
      const double r = chain_stats(chain, db, 0.1).recency;
      for (ItemId i = 0; i < n; ++i) {
        CHECK(chain_stats(s_extend(node, i, db, theta), db, 0.1).recency <= r + 1e-12);
        if (i > item) CHECK(chain_stats(i_extend(node, i, db, theta), db, 0.1).recency <= r + 1e-12);
      }
    }
  }
}

TEST_CASE("property: parallel and repeated runs are identical") {
  for (std::uint64_t seed = 120; seed < 135; ++seed) {
    const auto db = seqrfm::testing::random_db(seed);
    const Params p{0.01, 0, 0.1, 0.05, 40};
    MinerOptions par = capped(5);
    par.threads = 4;
    const auto a = mine(db, p, capped(5));
    const auto b = mine(db, p, par);
    const auto c = mine(db, p, capped(5));
    CHECK(text(db, a.patterns) == text(db, b.patterns));
    CHECK(text(db, a.patterns) == text(db, c.patterns));
    CHECK(a.candidate_count == b.candidate_count);
    CHECK(a.prune.pm == b.prune.pm);
  }
}
