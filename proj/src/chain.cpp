#include "seqrfm/chain.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace seqrfm {

namespace {

// Monetary after `item` inside itemset `tid`, plus every later itemset.
Money remaining_after(const MTSequence& seq, std::size_t tid, ItemId item) {
  Money sum = seq.monetary_after(tid);
  for (const auto& it : seq.itemset(tid).items)
    if (it.item > item) sum += it.money;
  return sum;
}

// Keeps `best` sorted by start_ts descending with one entry per start.
void merge_entry(std::vector<ChainEntry>& best, const ChainEntry& e) {
  auto it = std::lower_bound(best.begin(), best.end(), e.start_ts,
                             [](const ChainEntry& a, Timestamp ts) { return a.start_ts > ts; });
  if (it != best.end() && it->start_ts == e.start_ts)
    it->auxm = std::max(it->auxm, e.auxm);
  else
    best.insert(it, e);
}

template <typename Fn>
void for_each_sequence_group(const MTChain& chain, Fn&& fn) {
  const auto& els = chain.elements;
  for (std::size_t i = 0; i < els.size();) {
    std::size_t j = i;
    while (j < els.size() && els[j].sid == els[i].sid) ++j;
    fn(std::span<const ChainElement>(els.data() + i, j - i));
    i = j;
  }
}

}  // namespace

Money ChainElement::best_auxm() const {
  Money best = 0;
  for (const auto& e : entries) best = std::max(best, e.auxm);
  return best;
}

std::size_t MTChain::sequence_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (i == 0 || elements[i].sid != elements[i - 1].sid) ++n;
  return n;
}

std::map<ItemId, MTChain> build_initial_chains(const MTDatabase& db, Timestamp /*theta*/,
                                               const ItemMask& mask) {
  // A 1-sequence instance has a time span of zero, so theta never filters here.
  std::map<ItemId, MTChain> chains;
  for (const auto& seq : db.sequences()) {
    for (std::size_t tid = 0; tid < seq.size(); ++tid) {
      const auto& is = seq.itemset(tid);
      for (const auto& it : is.items) {
        if (!mask.active(it.item)) continue;
        auto [pos, fresh] = chains.try_emplace(it.item);
        if (fresh) pos->second.pattern = Pattern::single(it.item);
        pos->second.elements.push_back(
            {seq.sid(), tid, remaining_after(seq, tid, it.item), {{is.timestamp, it.money}}});
      }
    }
  }
  return chains;
}

MTChain i_extend(const TreeNode& node, ItemId item, const MTDatabase& db, Timestamp theta) {
  MTChain out;
  out.pattern = node.seq().i_extended(item);  // throws on order violation
  for (const auto& el : node.chain.elements) {
    const auto& seq = db.sequence(el.sid);
    const auto& is = seq.itemset(el.tid);
    const MTItem* hit = is.find(item);
    if (!hit) continue;
    ChainElement child{el.sid, el.tid, remaining_after(seq, el.tid, item), {}};
    for (const auto& e : el.entries)
      if (e.start_ts - is.timestamp <= theta) child.entries.push_back({e.start_ts, e.auxm + hit->money});
    if (!child.entries.empty()) out.elements.push_back(std::move(child));
  }
  return out;
}

MTChain s_extend(const TreeNode& node, ItemId item, const MTDatabase& db, Timestamp theta) {
  MTChain out;
  out.pattern = node.seq().s_extended(item);
  std::vector<ChainEntry> reachable;
  for_each_sequence_group(node.chain, [&](std::span<const ChainElement> group) {
    const auto& seq = db.sequence(group.front().sid);
    reachable.clear();
    std::size_t next = 0;
    for (std::size_t q = group.front().tid + 1; q < seq.size(); ++q) {
      // Absorb every parent element ending strictly before q.
      for (; next < group.size() && group[next].tid < q; ++next)
        for (const auto& e : group[next].entries) merge_entry(reachable, e);
      const auto& is = seq.itemset(q);
      const MTItem* hit = is.find(item);
      if (!hit) continue;
      ChainElement child{seq.sid(), q, remaining_after(seq, q, item), {}};
      for (const auto& e : reachable)
        if (e.start_ts - is.timestamp <= theta) child.entries.push_back({e.start_ts, e.auxm + hit->money});
      if (!child.entries.empty()) out.elements.push_back(std::move(child));
    }
  });
  return out;
}

PatternStats chain_stats(const MTChain& chain, const MTDatabase& db, double delta) {
  PatternStats st;
  for_each_sequence_group(chain, [&](std::span<const ChainElement> group) {
    const auto& seq = db.sequence(group.front().sid);
    Timestamp latest = group.front().latest_start();
    Money best = 0;
    for (const auto& el : group) {
      latest = std::max(latest, el.latest_start());
      best = std::max(best, el.best_auxm());
    }
    st.recency += recency_weight(delta, seq.ct() - latest);
    st.frequency += 1;
    st.monetary += best;
  });
  return st;
}

Money swm(ItemId item, const MTDatabase& db) {
  Money sum = 0;
  for (const auto& seq : db.sequences()) {
    const bool present = std::any_of(seq.itemsets().begin(), seq.itemsets().end(),
                                     [&](const MTItemset& is) { return is.find(item) != nullptr; });
    if (present) sum += seq.total_monetary();
  }
  return sum;
}

std::vector<Money> swm_all(const MTDatabase& db) {
  std::vector<Money> out(db.item_universe(), 0);
  std::vector<int> seen(db.item_universe(), 0);
  for (const auto& seq : db.sequences()) {
    for (const auto& is : seq.itemsets()) {
      for (const auto& it : is.items) {
        if (seen[it.item] == seq.sid()) continue;
        seen[it.item] = seq.sid();
        out[it.item] += seq.total_monetary();
      }
    }
  }
  return out;
}

std::vector<std::pair<int, Money>> em_by_sequence(const MTChain& chain) {
  std::vector<std::pair<int, Money>> out;
  for_each_sequence_group(chain, [&](std::span<const ChainElement> group) {
    Money best = 0;
    for (const auto& el : group) best = std::max(best, el.best_auxm() + el.rm);
    out.emplace_back(group.front().sid, best);
  });
  return out;
}

Money em(const MTChain& chain, const MTDatabase& /*db*/) {
  Money sum = 0;
  for (const auto& [sid, value] : em_by_sequence(chain)) sum += value;
  return sum;
}

Money pm(const MTChain& parent, const MTChain& child, const MTDatabase& /*db*/) {
  const auto per_sid = em_by_sequence(parent);
  Money sum = 0;
  auto it = per_sid.begin();
  for (std::size_t i = 0; i < child.elements.size(); ++i) {
    const int sid = child.elements[i].sid;
    if (i > 0 && child.elements[i - 1].sid == sid) continue;
    it = std::lower_bound(it, per_sid.end(), sid, [](const auto& p, int s) { return p.first < s; });
    if (it != per_sid.end() && it->first == sid) sum += it->second;
  }
  return sum;
}

void dump_chain(std::ostream& out, const MTChain& chain) {
  for (const auto& el : chain.elements) {
    out << "sid=" << el.sid << " tid=" << el.tid + 1 << " rm=" << el.rm << " entries=[";
    for (std::size_t i = 0; i < el.entries.size(); ++i) {
      if (i) out << ',';
      out << '(' << el.entries[i].start_ts << ',' << el.entries[i].auxm << ')';
    }
    out << "]\n";
  }
}

std::string dump_chain(const MTChain& chain) {
  std::ostringstream out;
  dump_chain(out, chain);
  return out.str();
}

}  // namespace seqrfm
