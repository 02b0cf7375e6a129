#include "seqrfm/miner.hpp"

#include <algorithm>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seqrfm {

namespace {

using Clock = std::chrono::steady_clock;

struct ScanResult {
  std::vector<std::pair<ItemId, Money>> i_items;  // (item, PM)
  std::vector<std::pair<ItemId, Money>> s_items;
  std::int64_t theta_only = 0;
};

// Per-thread scratch indexed by item; epochs avoid clearing between scans.
class ExtensionScanner {
 public:
  explicit ExtensionScanner(std::size_t universe)
      : i_(universe), s_(universe), raw_(universe) {}

  ScanResult scan(const MTChain& chain, const MTDatabase& db, Timestamp theta, const ItemMask& mask) {
    ++node_epoch_;
    i_touched_.clear();
    s_touched_.clear();
    raw_touched_.clear();

    const ItemId last = chain.pattern.last_item();
    const auto em = em_by_sequence(chain);
    const auto& els = chain.elements;
    std::size_t g = 0;
    for (std::size_t begin = 0; begin < els.size(); ++g) {
      std::size_t end = begin;
      while (end < els.size() && els[end].sid == els[begin].sid) ++end;
      ++group_epoch_;
      const Money group_em = em[g].second;
      const auto& seq = db.sequence(els[begin].sid);

      for (std::size_t e = begin; e < end; ++e) {
        const auto& items = seq.itemset(els[e].tid).items;
        auto it = std::upper_bound(items.begin(), items.end(), last,
                                   [](ItemId v, const MTItem& m) { return v < m.item; });
        for (; it != items.end(); ++it)
          if (mask.active(it->item)) touch(i_, i_touched_, it->item, group_em);
      }

      // The earliest start among elements ending before q gives the
      // tightest span for an S-extension at q.
      Timestamp earliest = els[begin].earliest_start();
      std::size_t next = begin;
      for (std::size_t q = els[begin].tid + 1; q < seq.size(); ++q) {
        for (; next < end && els[next].tid < q; ++next) earliest = std::min(earliest, els[next].earliest_start());
        const auto& is = seq.itemset(q);
        const bool compact = is.timestamp >= earliest - theta;
        for (const auto& it : is.items) {
          if (!mask.active(it.item)) continue;
          touch(raw_, raw_touched_, it.item, 0);
          if (compact) touch(s_, s_touched_, it.item, group_em);
        }
      }
      begin = end;
    }

    ScanResult out;
    out.i_items.reserve(i_touched_.size());
    for (ItemId item : i_touched_) out.i_items.emplace_back(item, i_[item].pm);
    out.s_items.reserve(s_touched_.size());
    for (ItemId item : s_touched_) out.s_items.emplace_back(item, s_[item].pm);
    for (ItemId item : raw_touched_)
      if (s_[item].node != node_epoch_) ++out.theta_only;
    std::sort(out.i_items.begin(), out.i_items.end());
    std::sort(out.s_items.begin(), out.s_items.end());
    return out;
  }

 private:
  struct Slot {
    std::uint64_t node = 0;
    std::uint64_t group = 0;
    Money pm = 0;
  };

  void touch(std::vector<Slot>& slots, std::vector<ItemId>& touched, ItemId item, Money em) {
    Slot& s = slots[item];
    if (s.node != node_epoch_) {
      s.node = node_epoch_;
      s.group = 0;
      s.pm = 0;
      touched.push_back(item);
    }
    if (s.group != group_epoch_) {
      s.group = group_epoch_;
      s.pm += em;
    }
  }

  std::vector<Slot> i_, s_, raw_;
  std::vector<ItemId> i_touched_, s_touched_, raw_touched_;
  std::uint64_t node_epoch_ = 0;
  std::uint64_t group_epoch_ = 0;
};

struct RootSet {
  Thresholds thresholds;
  ItemMask mask;
  std::vector<TreeNode> nodes;
  PruneCounters prune;
};

// Top-level gate: derive thresholds, drop 1-sequences that cannot start or
// appear in any RFM-pattern, and build the first-level nodes.
RootSet prepare_roots(const MTDatabase& db, const Params& params, const MinerOptions& options) {
  check_params(params);
  RootSet roots;
  roots.thresholds = Thresholds::derive(params, db);
  roots.mask = ItemMask(db.item_universe());

  auto chains = build_initial_chains(db, params.theta);
  const auto swm_values = swm_all(db);
  for (auto& [item, chain] : chains) {
    const auto freq = static_cast<double>(chain.sequence_count());
    if (freq < roots.thresholds.frequency) {
      roots.mask.erase(item);
      continue;
    }
    if (options.toggles.use_swm && static_cast<double>(swm_values[item]) < roots.thresholds.monetary) {
      roots.mask.erase(item);
      ++roots.prune.swm;
      continue;
    }
    roots.nodes.push_back({std::move(chain)});
  }
  return roots;
}

class Search {
 public:
  Search(const MTDatabase& db, const Params& params, const MinerOptions& options, const RootSet& roots,
         const EmitFn& emit, MiningResult& acc)
      : db_(db), params_(params), options_(options), t_(roots.thresholds), mask_(roots.mask), emit_(emit),
        acc_(acc), scanner_(db.item_universe()) {}

  void run_root(const TreeNode& node) {
    ++acc_.candidate_count;
    const auto st = chain_stats(node.chain, db_, params_.delta);
    if (meets(st, t_)) emit_({node.seq(), st});
    if (passes_rf(st) && may_grow(node)) expand(node);
  }

 private:
  bool passes_rf(const PatternStats& st) const {
    return st.recency >= t_.recency && static_cast<double>(st.frequency) >= t_.frequency;
  }

  bool may_grow(const TreeNode& node) const {
    return options_.max_length == 0 || node.seq().length() < options_.max_length;
  }

  void expand(const TreeNode& node) {
    ++acc_.visited_nodes;
    ScanResult scan = scanner_.scan(node.chain, db_, params_.theta, mask_);
    acc_.prune.theta += scan.theta_only;
    for (const auto& [item, pm_value] : scan.i_items) {
      if (pm_prunes(pm_value)) continue;
      visit({i_extend(node, item, db_, params_.theta)});
    }
    for (const auto& [item, pm_value] : scan.s_items) {
      if (pm_prunes(pm_value)) continue;
      visit({s_extend(node, item, db_, params_.theta)});
    }
  }

  bool pm_prunes(Money pm_value) {
    if (!options_.toggles.use_pm || static_cast<double>(pm_value) >= t_.monetary) return false;
    ++acc_.prune.pm;
    return true;
  }

  void visit(const TreeNode& child) {
    ++acc_.candidate_count;
    const auto st = chain_stats(child.chain, db_, params_.delta);
    if (meets(st, t_)) emit_({child.seq(), st});
    if (!passes_rf(st) || !may_grow(child)) return;
    if (options_.toggles.use_em && static_cast<double>(em(child.chain, db_)) < t_.monetary) {
      ++acc_.prune.em;
      return;
    }
    expand(child);
  }

  const MTDatabase& db_;
  const Params& params_;
  const MinerOptions& options_;
  const Thresholds& t_;
  const ItemMask& mask_;
  const EmitFn& emit_;
  MiningResult& acc_;
  ExtensionScanner scanner_;
};

}  // namespace

MiningResult mine_serial(const MTDatabase& db, const Params& params, const MinerOptions& options,
                         const EmitFn& emit) {
  const auto start = Clock::now();
  MiningResult result;
  const RootSet roots = prepare_roots(db, params, options);
  result.prune = roots.prune;
  Search search(db, params, options, roots, emit, result);
  for (const auto& node : roots.nodes) search.run_root(node);
  result.elapsed = Clock::now() - start;
  return result;
}

MiningResult mine_parallel(const MTDatabase& db, const Params& params, const MinerOptions& options) {
  const auto start = Clock::now();
  const RootSet roots = prepare_roots(db, params, options);
  const auto n = static_cast<std::int64_t>(roots.nodes.size());
  std::vector<MiningResult> partial(roots.nodes.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.threads))
  for (std::int64_t r = 0; r < n; ++r) {
    auto& local = partial[static_cast<std::size_t>(r)];
    const EmitFn collect = [&local](PatternRecord&& rec) { local.patterns.push_back(std::move(rec)); };
    Search search(db, params, options, roots, collect, local);
    search.run_root(roots.nodes[static_cast<std::size_t>(r)]);
  }

  MiningResult result;
  result.prune = roots.prune;
  for (auto& p : partial) {
    result.candidate_count += p.candidate_count;
    result.visited_nodes += p.visited_nodes;
    result.prune += p.prune;
    std::move(p.patterns.begin(), p.patterns.end(), std::back_inserter(result.patterns));
  }
  result.elapsed = Clock::now() - start;
  return result;
}

MiningResult mine(const MTDatabase& db, const Params& params, const MinerOptions& options) {
  MiningResult result;
  if (options.threads > 1) {
    result = mine_parallel(db, params, options);
  } else {
    std::vector<PatternRecord> found;
    result = mine_serial(db, params, options, [&found](PatternRecord&& rec) { found.push_back(std::move(rec)); });
    result.patterns = std::move(found);
  }
  sort_records(result.patterns);
  return result;
}

ExtensionLists collect_extension_items(const MTChain& chain, const MTDatabase& db, Timestamp theta,
                                       const ItemMask& mask, double pm_floor) {
  ExtensionLists out;
  if (chain.empty()) return out;
  ExtensionScanner scanner(db.item_universe());
  const auto scan = scanner.scan(chain, db, theta, mask);
  for (const auto& [item, pm_value] : scan.i_items)
    if (pm_floor < 0 || static_cast<double>(pm_value) >= pm_floor) out.ilist.push_back(item);
  for (const auto& [item, pm_value] : scan.s_items)
    if (pm_floor < 0 || static_cast<double>(pm_value) >= pm_floor) out.slist.push_back(item);
  return out;
}

void write_run_stats(std::ostream& out, const MiningResult& r) {
  out << "candidates=" << r.candidate_count << '\n'
      << "patterns=" << r.patterns.size() << '\n'
      << "prune_swm=" << r.prune.swm << '\n'
      << "prune_em=" << r.prune.em << '\n'
      << "prune_pm=" << r.prune.pm << '\n'
      << "prune_theta=" << r.prune.theta << '\n'
      << "elapsed_ms=" << std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count() << '\n';
}

}  // namespace seqrfm
