#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "skopus/combinator.hpp"
#include "skopus/corpus.hpp"
#include "skopus/ratio.hpp"

namespace skopus {

enum class MeasureKind { leverage, support };
enum class Aggregation { mean, min };

struct MeasureConfig {
  MeasureKind measure_kind = MeasureKind::leverage;
  // Only consulted for leverage. `mean` averages the supports of all
  // compositions of a partition; `min` takes the weakest one.
  Aggregation aggregation = Aggregation::mean;
  bool support_cache_enabled = true;
  std::size_t cache_max_entries = 0;  // 0 = unlimited
};

struct ScoredPattern {
  Pattern pattern;
  Ratio score;                          // leverage or support, exact
  std::int64_t count = 0;               // covering records
  std::int64_t n = 0;                   // database size
  std::optional<Ratio> expected_support;  // absent for the support measure
  std::optional<BspTemplate> witness_partition;

  double support() const { return static_cast<double>(count) / static_cast<double>(n); }
};

/* Memoizes pattern -> count. Pair counts get a dedicated table built in
 * one pass over the records (the bootstrap alone issues |I|^2 of them);
 * longer patterns land in a generic map. When the entry cap is reached,
 * new counts are computed but not retained. Confine to one search thread.
 */
class SupportCache {
 public:
  SupportCache(const SequenceDatabase& db, bool enabled, std::size_t max_entries);

  std::int64_t count(const Pattern& p);
  std::size_t entry_count() const;

 private:
  std::int64_t count_direct(const Pattern& p) const;
  void ensure_pair_table();

  const SequenceDatabase& db_;
  bool enabled_;
  std::size_t max_entries_;
  bool pair_table_built_ = false;
  std::unordered_map<std::uint64_t, std::int64_t> pair_counts_;
  std::unordered_map<Pattern, std::int64_t, PatternHash> general_;
};

/* Scoring engine: expected support as the maximum over all binary
 * sequential partitions of the aggregate support of their compositions,
 * leverage as observed minus expected support, plus the sup(S) search
 * bound. All values are exact integer-count rationals; floating point
 * appears only in the double accessors.
 */
class Scorer {
 public:
  Scorer(const SequenceDatabase& db, const MeasureConfig& cfg, TemplateCache& templates);

  // Aggregate as (count_sum, units): the expected support equals
  // count_sum / (units * n).
  struct Expectation {
    std::int64_t count_sum = 0;
    std::int64_t units = 1;
    std::optional<BspTemplate> witness;

    Ratio ratio(std::int64_t n) const { return Ratio{count_sum, units * n}; }
  };

  Expectation expected_support(const Pattern& p);
  ScoredPattern score(const Pattern& p);
  ScoredPattern score_with_count(const Pattern& p, std::int64_t known_count);
  Ratio upper_bound(std::int64_t count) const { return Ratio{count, n_}; }

  std::int64_t count(const Pattern& p) { return cache_.count(p); }
  const MeasureConfig& config() const { return cfg_; }
  SupportCache& cache() { return cache_; }

 private:
  const SequenceDatabase& db_;
  MeasureConfig cfg_;
  TemplateCache& templates_;
  SupportCache cache_;
  std::int64_t n_;
};

// Convenience wrappers matching the library surface.
double expected_support(const Pattern& p, const SequenceDatabase& db, const MeasureConfig& cfg);
ScoredPattern leverage(const Pattern& p, const SequenceDatabase& db, const MeasureConfig& cfg);
ScoredPattern support_measure(const Pattern& p, const SequenceDatabase& db);

}  // namespace skopus
