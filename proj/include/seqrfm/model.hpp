#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seqrfm {

using Money = std::int64_t;
using Timestamp = std::int64_t;

/// Interned item identifier. Codes are assigned in lexicographic order of
/// the item tokens, so comparing codes compares the tokens.
using ItemId = std::uint32_t;

inline constexpr Timestamp kUnboundedSpan = std::numeric_limits<Timestamp>::max();

/// Maps item tokens to codes and back. Immutable once built.
class ItemDictionary {
 public:
  ItemDictionary() = default;
  /// Builds a dictionary over the given tokens (duplicates allowed).
  explicit ItemDictionary(std::vector<std::string> tokens);

  std::size_t size() const { return names_.size(); }
  const std::string& name(ItemId id) const { return names_.at(id); }
  /// Throws std::out_of_range for unknown tokens.
  ItemId id(std::string_view token) const;
  bool contains(std::string_view token) const;
  std::span<const std::string> names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ItemId> index_;
};

/// Returns true iff the token is a legal item id: non-empty, no whitespace, no ':'.
bool is_valid_item_token(std::string_view token);

struct MTItem {
  ItemId item;
  Money money;

  bool operator==(const MTItem&) const = default;
};

struct MTItemset {
  Timestamp timestamp = 0;
  std::vector<MTItem> items;

  Money total() const;
  /// Binary search; nullptr when absent. Requires sorted items.
  const MTItem* find(ItemId item) const;

  bool operator==(const MTItemset&) const = default;
};

class MTSequence {
 public:
  MTSequence() = default;
  MTSequence(int sid, std::vector<MTItemset> itemsets);

  int sid() const { return sid_; }
  std::span<const MTItemset> itemsets() const { return itemsets_; }
  const MTItemset& itemset(std::size_t pos) const { return itemsets_[pos]; }
  std::size_t size() const { return itemsets_.size(); }

  /// Current timestamp: the timestamp of the first itemset (0 when empty).
  Timestamp ct() const { return itemsets_.empty() ? 0 : itemsets_.front().timestamp; }
  Money total_monetary() const { return total_; }
  /// Monetary of every itemset strictly after `pos`.
  Money monetary_after(std::size_t pos) const { return suffix_[pos + 1]; }
  /// Total number of items over all itemsets.
  std::size_t item_count() const;

  bool operator==(const MTSequence& other) const {
    return sid_ == other.sid_ && itemsets_ == other.itemsets_;
  }

 private:
  int sid_ = 0;
  std::vector<MTItemset> itemsets_;
  Money total_ = 0;
  std::vector<Money> suffix_;  // suffix_[k] = monetary of itemsets k..end
};

/// Token-level itemset/sequence used to build databases from text or code.
struct RawItemset {
  Timestamp timestamp = 0;
  std::vector<std::pair<std::string, Money>> items;
};
using RawSequence = std::vector<RawItemset>;

class MTDatabase {
 public:
  MTDatabase() = default;

  /// Interns item tokens and computes derived fields. Items inside each
  /// itemset are sorted by item id; no other repair is performed, so the
  /// result may still violate invariants (see validate_database).
  static MTDatabase from_raw(const std::vector<RawSequence>& raw);

  std::span<const MTSequence> sequences() const { return sequences_; }
  /// 1-based, as SIDs are.
  const MTSequence& sequence(int sid) const { return sequences_.at(static_cast<std::size_t>(sid - 1)); }
  std::size_t size() const { return sequences_.size(); }
  bool empty() const { return sequences_.empty(); }
  Money total_monetary() const { return total_; }
  const ItemDictionary& dictionary() const { return dict_; }
  std::size_t item_universe() const { return dict_.size(); }

  bool operator==(const MTDatabase& other) const;

 private:
  std::vector<MTSequence> sequences_;
  ItemDictionary dict_;
  Money total_ = 0;
};

struct Violation {
  int sid = 0;
  int itemset = -1;  // 0-based; -1 for sequence-level violations
  std::string reason;
};

std::vector<Violation> validate_database(const MTDatabase& db);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// An ordered list of non-empty, strictly increasing itemsets.
class Pattern {
 public:
  using Itemset = std::vector<ItemId>;

  Pattern() = default;
  explicit Pattern(std::vector<Itemset> itemsets);
  static Pattern single(ItemId item) { return Pattern(std::vector<Itemset>{Itemset{item}}); }

  std::span<const Itemset> itemsets() const { return itemsets_; }
  const Itemset& itemset(std::size_t k) const { return itemsets_[k]; }
  std::size_t itemset_count() const { return itemsets_.size(); }
  /// Number of items (the l of an l-sequence).
  std::size_t length() const;
  bool empty() const { return itemsets_.empty(); }
  ItemId last_item() const { return itemsets_.back().back(); }

  /// kappa (+) item; item must exceed last_item().
  Pattern i_extended(ItemId item) const;
  /// kappa (x) item.
  Pattern s_extended(ItemId item) const;

  bool operator==(const Pattern&) const = default;
  std::strong_ordering operator<=>(const Pattern& other) const { return itemsets_ <=> other.itemsets_; }

 private:
  std::vector<Itemset> itemsets_;
};

/// Itemset-by-itemset, item-by-item; a proper prefix precedes.
inline std::strong_ordering pattern_compare(const Pattern& a, const Pattern& b) { return a <=> b; }

/// True iff `sub` is a sub-sequence of `super` (each itemset of sub is a
/// subset of a distinct, order-preserving itemset of super).
bool is_subsequence(const Pattern& sub, const Pattern& super);

struct Params {
  double delta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  Timestamp theta = kUnboundedSpan;
};

/// Throws std::invalid_argument on out-of-range parameters.
void check_params(const Params& params);

/// Absolute thresholds derived from Params for one database.
struct Thresholds {
  double recency = 0.0;
  double frequency = 0.0;
  double monetary = 0.0;

  static Thresholds derive(const Params& params, const MTDatabase& db);
};

/// (1 - delta)^age, the recency weight of an instance starting `age` time
/// units before the sequence's current timestamp.
inline double recency_weight(double delta, Timestamp age) {
  return std::pow(1.0 - delta, static_cast<double>(age));
}

struct PatternStats {
  double recency = 0.0;
  std::int64_t frequency = 0;
  Money monetary = 0;
};

inline bool meets(const PatternStats& s, const Thresholds& t) {
  return s.recency >= t.recency && static_cast<double>(s.frequency) >= t.frequency &&
         static_cast<double>(s.monetary) >= t.monetary;
}

struct PatternRecord {
  Pattern pattern;
  PatternStats stats;
};

/// Sorts records by pattern_compare.
void sort_records(std::vector<PatternRecord>& records);

}  // namespace seqrfm
