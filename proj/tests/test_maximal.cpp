#include <doctest.h>

#include <sstream>

#include "seqrfm/io.hpp"
#include "seqrfm/maximal.hpp"
#include "seqrfm/miner.hpp"
#include "seqrfm/oracle.hpp"
#include "support.hpp"

using namespace seqrfm;

namespace {

// Items a..f of the containment example.
const MTDatabase& letters() {
  static const MTDatabase db = parse_mt_database("<1> a:1 b:1 c:1 d:1 e:1 f:1 -1 -2");
  return db;
}

Pattern p(std::string_view text) { return parse_pattern(text, letters().dictionary()); }

PatternRecord rec(std::string_view text) { return {p(text), {}}; }

std::vector<Pattern> patterns(const std::vector<PatternRecord>& rs) {
  std::vector<Pattern> out;
  for (const auto& r : rs) out.push_back(r.pattern);
  return out;
}

}  // namespace

TEST_CASE("judge rejects a sub-sequence of a member") {
  MaximalSet set;
  REQUIRE(set.offer(rec("{a b c}{d e f}{e}")));
  CHECK_FALSE(maximal_judge(p("{c}{e}"), set));
  CHECK(set.size() == 1);
}

TEST_CASE("judge on an empty set") {
  MaximalSet set;
  CHECK(set.judge(p("{a}")));
  CHECK(set.empty());
}

TEST_CASE("judge removes members contained in the probe") {
  MaximalSet set;
  set.offer(rec("{d e}"));
  CHECK(set.judge(p("{a b c}{d e f}{e}")));
  CHECK(set.empty());
}

TEST_CASE("judge keeps an identical member") {
  MaximalSet set;
  set.offer(rec("{a}{b}"));
  CHECK_FALSE(set.judge(p("{a}{b}")));
  CHECK(set.size() == 1);
}

TEST_CASE("example set C reduces to two patterns") {
  const std::vector<PatternRecord> c{rec("{a b c}{d e f}{e}"), rec("{c}{e}"), rec("{d e}"), rec("{e}{f}")};
  MaximalSet set;
  for (const auto& r : c) set.offer(r);
  const std::vector<Pattern> want{p("{a b c}{d e f}{e}"), p("{e}{f}")};
  CHECK(patterns(set.records()) == want);
  CHECK(patterns(antichain(c)) == want);

  // Arrival order does not matter.
  MaximalSet rev;
  for (auto it = c.rbegin(); it != c.rend(); ++it) rev.offer(*it);
  CHECK(patterns(rev.records()) == want);
}

TEST_CASE("trivial reductions") {
  CHECK(antichain({}).empty());
  const std::vector<PatternRecord> flat{rec("{a}{b}"), rec("{b}{a}"), rec("{c d}")};
  CHECK(antichain(flat).size() == 3);
  const std::vector<PatternRecord> nested{rec("{a}"), rec("{a}{b}"), rec("{a}{b c}")};
  CHECK(patterns(antichain(nested)) == std::vector<Pattern>{p("{a}{b c}")});
}

TEST_CASE("mine_maximal on the example database") {
  const auto& db = seqrfm::testing::example_db();
  const Params params{0.01, 0, 0.3, 0.1, kUnboundedSpan};
  const auto full = mine(db, params);
  const auto max = mine_maximal(db, params);
  CHECK(patterns(max.mining.patterns) == patterns(antichain(full.patterns)));
  CHECK(max.all_patterns == full.patterns.size());
  CHECK(max.compression_rate() ==
        doctest::Approx(1.0 - static_cast<double>(max.mining.patterns.size()) / static_cast<double>(full.patterns.size())));
  std::ostringstream out;
  write_maximal_run_stats(out, max);
  CHECK(out.str().find("compression_rate=") != std::string::npos);
}

TEST_CASE("compression rate of an empty run") {
  const auto r = mine_maximal(MTDatabase{}, {});
  CHECK(r.compression_rate() == 0.0);
  CHECK(r.mining.patterns.empty());
}

TEST_CASE("property: maximal equals antichain of the full set") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto db = seqrfm::testing::random_db(seed, {20, 6, 6, 3, 20, 30});
    const Params params{0.01, 0, 0.1 * static_cast<double>(seed % 3), 0.05 * static_cast<double>(seed % 4),
                        seed % 2 ? kUnboundedSpan : 25};
    MinerOptions opt;
    opt.max_length = 5;
    const auto full = mine(db, params, opt);
    const auto serial = mine_maximal(db, params, opt);
    opt.threads = 3;
    const auto parallel = mine_maximal(db, params, opt);
    const auto want = patterns(antichain(full.patterns));
    CHECK(patterns(serial.mining.patterns) == want);
    CHECK(patterns(parallel.mining.patterns) == want);
    const auto& ms = serial.mining.patterns;
    // Antichain.
    for (std::size_t a = 0; a < ms.size(); ++a)
      for (std::size_t b = 0; b < ms.size(); ++b)
        if (a != b) CHECK_FALSE(is_subsequence(ms[a].pattern, ms[b].pattern));
    // Coverage.
    for (const auto& r : full.patterns) {
      bool covered = false;
      for (const auto& m : ms) covered = covered || is_subsequence(r.pattern, m.pattern);
      CHECK(covered);
    }
  }
}
