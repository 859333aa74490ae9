#include "skopus/expectation.hpp"

#include <algorithm>
#include <stdexcept>

namespace skopus {

namespace {

std::uint64_t pack_pair(ItemId a, ItemId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

SupportCache::SupportCache(const SequenceDatabase& db, bool enabled, std::size_t max_entries)
    : db_(db), enabled_(enabled), max_entries_(max_entries) {}

std::size_t SupportCache::entry_count() const {
  return pair_counts_.size() + general_.size();
}

void SupportCache::ensure_pair_table() {
  if (pair_table_built_) return;
  pair_table_built_ = true;
  // One pass: a record contributes to (i, j) when some i sits strictly
  // before some j. `seen` accumulates the items encountered so far.
  std::vector<ItemId> seen;
  std::unordered_map<std::uint64_t, std::uint32_t> last_record;
  for (std::uint32_t r = 0; r < db_.records().size(); ++r) {
    const Sequence& rec = db_.record(r);
    seen.clear();
    for (ItemId j : rec) {
      for (ItemId i : seen) {
        const std::uint64_t key = pack_pair(i, j);
        auto [it, inserted] = last_record.try_emplace(key, r);
        if (inserted || it->second != r) {
          it->second = r;
          ++pair_counts_[key];
        }
      }
      if (std::find(seen.begin(), seen.end(), j) == seen.end()) seen.push_back(j);
    }
  }
}

std::int64_t SupportCache::count_direct(const Pattern& p) const {
  if (p.size() == 1) return db_.items().support_count(p[0]);
  std::int64_t result = 0;
  for (const CoverEntry& start : db_.item_cover(p[0])) {
    std::uint32_t end = static_cast<std::uint32_t>(start.match_end);
    bool ok = true;
    for (std::size_t j = 1; j < p.size(); ++j) {
      const auto positions = db_.positions_in(p[j], start.record);
      auto it = std::upper_bound(positions.begin(), positions.end(), end);
      if (it == positions.end()) {
        ok = false;
        break;
      }
      end = *it;
    }
    if (ok) ++result;
  }
  return result;
}

std::int64_t SupportCache::count(const Pattern& p) {
  if (p.empty()) throw std::invalid_argument("count requires a nonempty pattern");
  if (p.size() == 1) return db_.items().support_count(p[0]);
  if (!enabled_) return count_direct(p);
  if (p.size() == 2) {
    ensure_pair_table();
    auto it = pair_counts_.find(pack_pair(p[0], p[1]));
    return it == pair_counts_.end() ? 0 : it->second;
  }
  auto it = general_.find(p);
  if (it != general_.end()) return it->second;
  const std::int64_t c = count_direct(p);
  if (max_entries_ == 0 || general_.size() < max_entries_) general_.emplace(p, c);
  return c;
}

Scorer::Scorer(const SequenceDatabase& db, const MeasureConfig& cfg, TemplateCache& templates)
    : db_(db),
      cfg_(cfg),
      templates_(templates),
      cache_(db, cfg.support_cache_enabled, cfg.cache_max_entries),
      n_(db.record_count()) {
  if (n_ == 0) throw std::runtime_error("empty database");
}

Scorer::Expectation Scorer::expected_support(const Pattern& p) {
  if (p.size() < 2) throw std::invalid_argument("expected support undefined for singletons");

  // Every composition of every partition has the full pattern length, so
  // beyond the longest record all their supports vanish.
  if (p.size() > db_.max_record_length()) return Expectation{0, 1, std::nullopt};

  const std::uint32_t length = static_cast<std::uint32_t>(p.size());
  const bool use_cache = length <= templates_.cache_max_length();
  Expectation best;
  bool have_best = false;

  auto visit_partition = [&](const BspTemplate& bsp) {
    auto [s1, s2] = apply_bsp(p, bsp);
    const std::uint32_t l1 = static_cast<std::uint32_t>(s1.size());
    const std::uint32_t l2 = static_cast<std::uint32_t>(s2.size());
    const std::int64_t n_comps = binomial(length, l1);

    std::int64_t sum = 0;
    std::int64_t minimum = -1;
    auto visit = [&](const CompositionTemplate& comp) {
      const std::int64_t c = cache_.count(apply_composition(s1, s2, comp));
      sum += c;
      if (minimum < 0 || c < minimum) minimum = c;
    };
    if (use_cache) {
      for (const CompositionTemplate& comp : *templates_.composition_templates(l1, l2))
        visit(comp);
    } else {
      enumerate_composition_templates(l1, l2, visit);
    }

    Expectation candidate;
    if (cfg_.aggregation == Aggregation::mean) {
      candidate = Expectation{sum, n_comps, bsp};
    } else {
      candidate = Expectation{minimum, 1, bsp};
    }
    if (!have_best || candidate.ratio(n_) > best.ratio(n_)) {
      best = std::move(candidate);
      have_best = true;
    }
  };

  if (use_cache) {
    for (const BspTemplate& bsp : *templates_.bsp_templates(length)) visit_partition(bsp);
  } else {
    enumerate_bsp_templates(length, visit_partition);
  }
  return best;
}

ScoredPattern Scorer::score_with_count(const Pattern& p, std::int64_t known_count) {
  ScoredPattern sp;
  sp.pattern = p;
  sp.count = known_count;
  sp.n = n_;
  if (cfg_.measure_kind == MeasureKind::support) {
    sp.score = Ratio{known_count, n_};
    return sp;
  }
  Expectation exp = expected_support(p);
  // leverage = count/n - sum/(units*n), on the common denominator units*n
  sp.score = Ratio{known_count * exp.units - exp.count_sum, exp.units * n_};
  sp.expected_support = exp.ratio(n_);
  sp.witness_partition = std::move(exp.witness);
  return sp;
}

ScoredPattern Scorer::score(const Pattern& p) {
  if (p.size() < 2) throw std::invalid_argument("patterns below length 2 are not scored");
  return score_with_count(p, cache_.count(p));
}

double expected_support(const Pattern& p, const SequenceDatabase& db, const MeasureConfig& cfg) {
  TemplateCache templates;
  Scorer scorer(db, cfg, templates);
  return scorer.expected_support(p).ratio(db.record_count()).value();
}

ScoredPattern leverage(const Pattern& p, const SequenceDatabase& db, const MeasureConfig& cfg) {
  MeasureConfig leverage_cfg = cfg;
  leverage_cfg.measure_kind = MeasureKind::leverage;
  TemplateCache templates;
  Scorer scorer(db, leverage_cfg, templates);
  return scorer.score(p);
}

ScoredPattern support_measure(const Pattern& p, const SequenceDatabase& db) {
  if (p.size() < 2) throw std::invalid_argument("patterns below length 2 are not scored");
  MeasureConfig cfg;
  cfg.measure_kind = MeasureKind::support;
  TemplateCache templates;
  Scorer scorer(db, cfg, templates);
  return scorer.score(p);
}

}  // namespace skopus
