#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "skopus/expectation.hpp"

namespace skopus {

struct SearchConfig {
  std::int64_t k = 20;
  // 0 = unlimited. Safety valve for pathological inputs; the sup(S) bound
  // keeps ordinary searches finite on its own.
  std::uint32_t max_pattern_length = 0;
  MeasureConfig measure;
  bool bootstrap_enabled = true;
  // Test hooks. Disabling pruning explores the whole (length-capped)
  // space; the prune log records every discarded subtree with the floor
  // entry that justified the cut.
  bool pruning_enabled = true;
  bool collect_prune_log = false;
};

struct SearchStats {
  std::int64_t nodes_expanded = 0;
  std::int64_t patterns_scored = 0;
  std::int64_t pruned_subtrees = 0;
  std::int64_t bootstrap_pairs = 0;
  std::int64_t insertions = 0;
};

// Snapshot of the weakest retained entry at some point of the search.
struct FloorEntry {
  Ratio score;
  std::int64_t support_count = 0;
  Pattern pattern;
};

struct PruneEvent {
  Pattern prefix;  // root of the discarded subtree
  FloorEntry floor;
};

/* Rank order of results: score, then support, then lexicographically
 * smaller item ids first. Total over distinct patterns, which makes
 * top-k selection and cross-run output well-defined.
 */
bool ranks_before(const ScoredPattern& a, const ScoredPattern& b);

/* Bounded ordered collection of scored patterns. A candidate is admitted
 * when the queue is not full or when it outranks the weakest entry (the
 * comparison uses the full rank order, so the retained set is exactly
 * the top k under it). One entry per pattern.
 */
class TopKQueue {
 public:
  explicit TopKQueue(std::int64_t capacity);

  bool insert(ScoredPattern candidate);
  bool full() const { return static_cast<std::int64_t>(entries_.size()) >= capacity_; }
  std::size_t size() const { return entries_.size(); }
  // Weakest entry when full; nullopt (conceptually -inf) otherwise.
  std::optional<FloorEntry> floor_entry() const;
  std::vector<ScoredPattern> ranked() const;

 private:
  struct RankCmp {
    bool operator()(const ScoredPattern& a, const ScoredPattern& b) const {
      return ranks_before(a, b);
    }
  };
  std::int64_t capacity_;
  std::set<ScoredPattern, RankCmp> entries_;
  std::unordered_set<Pattern, PatternHash> present_;
};

struct MineResult {
  std::vector<ScoredPattern> ranking;
  SearchStats stats;
  std::vector<PruneEvent> prune_log;
};

/* Exact top-k mining: breadth-first bootstrap over all two-item patterns
 * (when enabled), then depth-first suffix-extension search with sup(S)
 * as the upper bound. Single-threaded; the database may be shared by
 * concurrent searches.
 */
MineResult mine_topk(const SequenceDatabase& db, const SearchConfig& cfg);

// The bootstrap pass alone (exposed for tests): evaluates every ordered
// pair over items with nonzero support and prefills the queue.
void bootstrap_pairs(const SequenceDatabase& db, Scorer& scorer, TopKQueue& topk,
                     SearchStats& stats);

}  // namespace skopus
