#include "skopus/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace skopus {

bool ranks_before(const ScoredPattern& a, const ScoredPattern& b) {
  const int by_score = compare(a.score, b.score);
  if (by_score != 0) return by_score > 0;
  if (a.count != b.count) return a.count > b.count;
  return a.pattern < b.pattern;
}

TopKQueue::TopKQueue(std::int64_t capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("k must be at least 1");
}

bool TopKQueue::insert(ScoredPattern candidate) {
  if (present_.contains(candidate.pattern)) return false;
  if (full()) {
    auto worst = std::prev(entries_.end());
    if (!ranks_before(candidate, *worst)) return false;
    present_.erase(worst->pattern);
    entries_.erase(worst);
  }
  present_.insert(candidate.pattern);
  entries_.insert(std::move(candidate));
  return true;
}

std::optional<FloorEntry> TopKQueue::floor_entry() const {
  if (!full()) return std::nullopt;
  const ScoredPattern& worst = *entries_.rbegin();
  return FloorEntry{worst.score, worst.count, worst.pattern};
}

std::vector<ScoredPattern> TopKQueue::ranked() const {
  return std::vector<ScoredPattern>(entries_.begin(), entries_.end());
}

namespace {

struct SearchContext {
  const SequenceDatabase& db;
  const SearchConfig& cfg;
  Scorer& scorer;
  TopKQueue& topk;
  SearchStats& stats;
  std::vector<PruneEvent>& prune_log;
  std::int64_t n;
};

/* Can the subtree rooted at `child` (pattern of support `child_count`,
 * to be extended by at least one item) still contain an entry that
 * outranks the current floor? sup bounds the score of every extension.
 * On a score tie: under mean-aggregated leverage a positive support
 * forces expected support >= sup/length > 0 and hence a strictly smaller
 * score, so only zero-support subtrees can tie; under the support
 * measure and min-aggregated leverage a tie requires the extension to
 * keep the full support. Either way the tie cascades to the support key
 * and then to the ids, where `child + lowest item id` bounds every
 * extension from below.
 */
bool subtree_can_compete(const SearchContext& ctx, const Pattern& child,
                         std::int64_t child_count, const FloorEntry& floor) {
  const Ratio bound{child_count, ctx.n};
  const int by_score = compare(bound, floor.score);
  if (by_score > 0) return true;
  if (by_score < 0) return false;

  if (ctx.cfg.measure.measure_kind == MeasureKind::leverage &&
      ctx.cfg.measure.aggregation == Aggregation::mean && child_count != 0)
    return false;
  if (child_count != floor.support_count) return child_count > floor.support_count;
  Pattern lowest_extension = child;
  lowest_extension.push_back(0);
  return lowest_extension < floor.pattern;
}

bool keep_subtree(SearchContext& ctx, const Pattern& child, std::int64_t child_count) {
  if (!ctx.cfg.pruning_enabled) return true;
  const auto floor = ctx.topk.floor_entry();
  if (!floor) return true;
  if (subtree_can_compete(ctx, child, child_count, *floor)) return true;
  ++ctx.stats.pruned_subtrees;
  if (ctx.cfg.collect_prune_log) ctx.prune_log.push_back({child, *floor});
  return false;
}

struct KeptChild {
  ItemId item;
  std::int64_t count;
  Ratio order_key;
};

void expand(SearchContext& ctx, const Pattern& pattern, const CoverState& cover,
            const std::vector<ItemId>& queue) {
  ++ctx.stats.nodes_expanded;

  const bool children_at_cap =
      ctx.cfg.max_pattern_length != 0 && pattern.size() + 1 >= ctx.cfg.max_pattern_length;
  std::vector<KeptChild> kept;
  if (!children_at_cap) kept.reserve(queue.size());
  Pattern child = pattern;
  child.push_back(0);

  // Items stay in the queue across children so that repetitions such as
  // <a,a,b> remain reachable.
  for (ItemId item : queue) {
    child.back() = item;
    const CoverState child_cover = extend_cover(cover, item, ctx.db);
    const std::int64_t child_count = child_cover.count();

    Ratio order_key{child_count, ctx.n};
    if (child.size() >= 2) {
      ScoredPattern scored = ctx.scorer.score_with_count(child, child_count);
      ++ctx.stats.patterns_scored;
      order_key = scored.score;
      if (ctx.topk.insert(std::move(scored))) ++ctx.stats.insertions;
    }
    if (!children_at_cap && keep_subtree(ctx, child, child_count))
      kept.push_back({item, child_count, order_key});
  }

  if (kept.empty()) return;

  // Recurse best-scoring extension first to grow the floor early; the
  // surviving queue is shared by every child subtree.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const KeptChild& a, const KeptChild& b) { return a.order_key > b.order_key; });
  std::vector<ItemId> child_queue;
  child_queue.reserve(kept.size());
  for (const KeptChild& kc : kept) child_queue.push_back(kc.item);

  for (const KeptChild& kc : kept) {
    child.back() = kc.item;
    // The floor may have risen since the first loop.
    if (!keep_subtree(ctx, child, kc.count)) continue;
    const CoverState child_cover = extend_cover(cover, kc.item, ctx.db);
    expand(ctx, child, child_cover, child_queue);
  }
}

}  // namespace

void bootstrap_pairs(const SequenceDatabase& db, Scorer& scorer, TopKQueue& topk,
                     SearchStats& stats) {
  const std::size_t n_items = db.items().size();
  Pattern pair(2);
  for (ItemId i1 = 0; i1 < n_items; ++i1) {
    if (db.items().support_count(i1) == 0) continue;
    for (ItemId i2 = 0; i2 < n_items; ++i2) {
      if (db.items().support_count(i2) == 0) continue;
      pair[0] = i1;
      pair[1] = i2;
      ScoredPattern scored = scorer.score(pair);
      ++stats.bootstrap_pairs;
      ++stats.patterns_scored;
      if (topk.insert(std::move(scored))) ++stats.insertions;
    }
  }
}

MineResult mine_topk(const SequenceDatabase& db, const SearchConfig& cfg) {
  if (db.record_count() == 0) throw std::runtime_error("empty database");
  if (cfg.max_pattern_length != 0 && cfg.max_pattern_length < 2)
    throw std::invalid_argument("max pattern length must be at least 2");

  TemplateCache templates;
  Scorer scorer(db, cfg.measure, templates);
  TopKQueue topk(cfg.k);
  MineResult result;
  SearchContext ctx{db, cfg, scorer, topk, result.stats, result.prune_log, db.record_count()};

  if (cfg.bootstrap_enabled) bootstrap_pairs(db, scorer, topk, result.stats);

  // Root queue: all items, most supported first (ids break ties).
  std::vector<ItemId> root_queue(db.items().size());
  for (ItemId i = 0; i < root_queue.size(); ++i) root_queue[i] = i;
  std::stable_sort(root_queue.begin(), root_queue.end(), [&](ItemId a, ItemId b) {
    return db.items().support_count(a) > db.items().support_count(b);
  });

  CoverState root_cover;
  root_cover.entries.reserve(static_cast<std::size_t>(db.record_count()));
  for (std::uint32_t r = 0; r < db.records().size(); ++r)
    root_cover.entries.push_back({r, -1});

  expand(ctx, Pattern{}, root_cover, root_queue);

  result.ranking = topk.ranked();
  return result;
}

}  // namespace skopus
