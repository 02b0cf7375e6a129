#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "seqrfm/model.hpp"

namespace seqrfm {

/// Items still present in the working database. An empty mask admits all.
class ItemMask {
 public:
  ItemMask() = default;
  explicit ItemMask(std::size_t universe) : bits_(universe, 1) {}

  bool active(ItemId item) const { return bits_.empty() || bits_[item] != 0; }
  void erase(ItemId item) { bits_.at(item) = 0; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Best prefix monetary among the instances that start at `start_ts`.
struct ChainEntry {
  Timestamp start_ts = 0;
  Money auxm = 0;

  bool operator==(const ChainEntry&) const = default;
};

/// One ending position of the pattern inside one sequence.
struct ChainElement {
  int sid = 0;
  std::size_t tid = 0;  // 0-based itemset index of the last matched itemset
  Money rm = 0;         // monetary strictly after the last matched item
  std::vector<ChainEntry> entries;  // distinct start_ts, most recent first

  Money best_auxm() const;
  Timestamp latest_start() const { return entries.front().start_ts; }
  Timestamp earliest_start() const { return entries.back().start_ts; }
};

/// Projection of a pattern over the database: elements ordered by (sid, tid).
struct MTChain {
  Pattern pattern;
  std::vector<ChainElement> elements;

  bool empty() const { return elements.empty(); }
  std::size_t sequence_count() const;
};

/// A node of the search tree; the pattern is the chain's.
struct TreeNode {
  MTChain chain;

  const Pattern& seq() const { return chain.pattern; }
};

/// One chain per distinct (active) item, keyed by item.
std::map<ItemId, MTChain> build_initial_chains(const MTDatabase& db, Timestamp theta,
                                               const ItemMask& mask = {});

/// Chain of node.seq() (+) item. Throws std::logic_error unless item is
/// greater than the pattern's last item.
MTChain i_extend(const TreeNode& node, ItemId item, const MTDatabase& db, Timestamp theta);

/// Chain of node.seq() (x) item.
MTChain s_extend(const TreeNode& node, ItemId item, const MTDatabase& db, Timestamp theta);

PatternStats chain_stats(const MTChain& chain, const MTDatabase& db, double delta);

/// Sequence-weighted monetary of a 1-sequence.
Money swm(ItemId item, const MTDatabase& db);
/// swm for every item of the dictionary, indexed by ItemId.
std::vector<Money> swm_all(const MTDatabase& db);

/// Per-sid max(AUXM + RM), in sid order.
std::vector<std::pair<int, Money>> em_by_sequence(const MTChain& chain);
/// Extension monetary: upper bound on the monetary of any descendant.
Money em(const MTChain& chain, const MTDatabase& db);
/// Prefix monetary: the parent's per-sid EM summed over sids the child occupies.
Money pm(const MTChain& parent, const MTChain& child, const MTDatabase& db);

/// "sid=<n> tid=<n> rm=<n> entries=[(ts,auxm),...]" per element; tid is 1-based.
void dump_chain(std::ostream& out, const MTChain& chain);
std::string dump_chain(const MTChain& chain);

}  // namespace seqrfm
