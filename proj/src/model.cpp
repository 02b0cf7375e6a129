#include "seqrfm/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace seqrfm {

ItemDictionary::ItemDictionary(std::vector<std::string> tokens) : names_(std::move(tokens)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], static_cast<ItemId>(i));
}

ItemId ItemDictionary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) throw std::out_of_range("unknown item '" + std::string(token) + "'");
  return it->second;
}

bool ItemDictionary::contains(std::string_view token) const {
  return index_.contains(std::string(token));
}

bool is_valid_item_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    return c == ':' || std::isspace(static_cast<unsigned char>(c));
  });
}

Money MTItemset::total() const {
  Money sum = 0;
  for (const auto& it : items) sum += it.money;
  return sum;
}

const MTItem* MTItemset::find(ItemId item) const {
  auto it = std::lower_bound(items.begin(), items.end(), item,
                             [](const MTItem& a, ItemId b) { return a.item < b; });
  return (it != items.end() && it->item == item) ? &*it : nullptr;
}

MTSequence::MTSequence(int sid, std::vector<MTItemset> itemsets)
    : sid_(sid), itemsets_(std::move(itemsets)), suffix_(itemsets_.size() + 1, 0) {
  for (std::size_t k = itemsets_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + itemsets_[k].total();
  total_ = suffix_[0];
}

std::size_t MTSequence::item_count() const {
  std::size_t n = 0;
  for (const auto& is : itemsets_) n += is.items.size();
  return n;
}

MTDatabase MTDatabase::from_raw(const std::vector<RawSequence>& raw) {
  std::vector<std::string> tokens;
  for (const auto& seq : raw)
    for (const auto& is : seq)
      for (const auto& [name, money] : is.items) tokens.push_back(name);

  MTDatabase db;
  db.dict_ = ItemDictionary(std::move(tokens));
  db.sequences_.reserve(raw.size());
  for (std::size_t s = 0; s < raw.size(); ++s) {
    std::vector<MTItemset> itemsets;
    itemsets.reserve(raw[s].size());
    for (const auto& ris : raw[s]) {
      MTItemset is;
      is.timestamp = ris.timestamp;
      is.items.reserve(ris.items.size());
      for (const auto& [name, money] : ris.items) is.items.push_back({db.dict_.id(name), money});
      std::stable_sort(is.items.begin(), is.items.end(),
                       [](const MTItem& a, const MTItem& b) { return a.item < b.item; });
      itemsets.push_back(std::move(is));
    }
    db.sequences_.emplace_back(static_cast<int>(s + 1), std::move(itemsets));
    db.total_ += db.sequences_.back().total_monetary();
  }
  return db;
}

bool MTDatabase::operator==(const MTDatabase& other) const {
  if (sequences_.size() != other.sequences_.size()) return false;
  // Codes are dictionary-relative; compare through the tokens.
  for (std::size_t s = 0; s < sequences_.size(); ++s) {
    const auto& a = sequences_[s];
    const auto& b = other.sequences_[s];
    if (a.sid() != b.sid() || a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const auto& x = a.itemset(k);
      const auto& y = b.itemset(k);
      if (x.timestamp != y.timestamp || x.items.size() != y.items.size()) return false;
      for (std::size_t i = 0; i < x.items.size(); ++i) {
        if (x.items[i].money != y.items[i].money) return false;
        if (dict_.name(x.items[i].item) != other.dict_.name(y.items[i].item)) return false;
      }
    }
  }
  return true;
}

std::vector<Violation> validate_database(const MTDatabase& db) {
  std::vector<Violation> out;
  int expected_sid = 1;
  for (const auto& seq : db.sequences()) {
    if (seq.sid() != expected_sid) out.push_back({seq.sid(), -1, "sid out of order"});
    ++expected_sid;
    if (seq.size() == 0) {
      out.push_back({seq.sid(), -1, "sequence has no itemsets"});
      continue;
    }
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const auto& is = seq.itemset(k);
      const int idx = static_cast<int>(k);
      if (is.timestamp < 0) out.push_back({seq.sid(), idx, "negative timestamp"});
      if (k > 0 && is.timestamp > seq.itemset(k - 1).timestamp)
        out.push_back({seq.sid(), idx, "timestamps not non-increasing"});
      if (is.items.empty()) out.push_back({seq.sid(), idx, "itemset has no items"});
      for (std::size_t i = 0; i < is.items.size(); ++i) {
        if (is.items[i].money < 0) out.push_back({seq.sid(), idx, "negative monetary value"});
        if (i > 0 && is.items[i].item == is.items[i - 1].item)
          out.push_back({seq.sid(), idx, "duplicate item in itemset"});
        else if (i > 0 && is.items[i].item < is.items[i - 1].item)
          out.push_back({seq.sid(), idx, "items not strictly increasing"});
      }
    }
  }
  return out;
}

namespace {
std::string describe(const std::vector<Violation>& v) {
  if (v.empty()) return "invalid database";
  std::string msg = "sequence " + std::to_string(v.front().sid);
  if (v.front().itemset >= 0) msg += ", itemset " + std::to_string(v.front().itemset + 1);
  msg += ": " + v.front().reason;
  if (v.size() > 1) msg += " (and " + std::to_string(v.size() - 1) + " more)";
  return msg;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

Pattern::Pattern(std::vector<Itemset> itemsets) : itemsets_(std::move(itemsets)) {
  for (const auto& is : itemsets_) {
    if (is.empty()) throw std::invalid_argument("pattern itemset must not be empty");
    if (!std::is_sorted(is.begin(), is.end()) || std::adjacent_find(is.begin(), is.end()) != is.end())
      throw std::invalid_argument("pattern itemset must be strictly increasing");
  }
}

std::size_t Pattern::length() const {
  std::size_t n = 0;
  for (const auto& is : itemsets_) n += is.size();
  return n;
}

Pattern Pattern::i_extended(ItemId item) const {
  if (itemsets_.empty() || item <= last_item())
    throw std::logic_error("I-extension item must follow the last item of the pattern");
  Pattern out = *this;
  out.itemsets_.back().push_back(item);
  return out;
}

Pattern Pattern::s_extended(ItemId item) const {
  Pattern out = *this;
  out.itemsets_.push_back({item});
  return out;
}

bool is_subsequence(const Pattern& sub, const Pattern& super) {
  std::size_t j = 0;
  for (const auto& need : sub.itemsets()) {
    while (j < super.itemset_count() &&
           !std::includes(super.itemset(j).begin(), super.itemset(j).end(), need.begin(), need.end()))
      ++j;
    if (j == super.itemset_count()) return false;
    ++j;
  }
  return true;
}

void check_params(const Params& p) {
  if (!(p.delta >= 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) throw std::invalid_argument("alpha must be >= 0");
  if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
  if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (p.theta < 0) throw std::invalid_argument("theta must be >= 0");
}

Thresholds Thresholds::derive(const Params& p, const MTDatabase& db) {
  return {p.alpha, p.beta * static_cast<double>(db.size()),
          p.gamma * static_cast<double>(db.total_monetary())};
}

void sort_records(std::vector<PatternRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const PatternRecord& a, const PatternRecord& b) { return a.pattern < b.pattern; });
}

}  // namespace seqrfm
