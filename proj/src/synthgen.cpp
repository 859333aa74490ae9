#include "skopus/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace skopus {

namespace {

/* All draws go through hand-rolled transforms of the mt19937_64 stream:
 * the standard <random> distributions are not bit-stable across library
 * implementations, and reproducibility from the seed is part of the
 * contract.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  double exponential() { return -std::log1p(-uniform()); }

  // Inversion by sequential search; exact for the moderate rates used here.
  std::int64_t poisson(double rate) {
    const double u = uniform();
    double p = std::exp(-rate);
    double cum = p;
    std::int64_t k = 0;
    const std::int64_t cap = static_cast<std::int64_t>(rate + 60.0 * std::sqrt(rate) + 20.0);
    while (u > cum && k < cap) {
      ++k;
      p *= rate / static_cast<double>(k);
      cum += p;
    }
    return k;
  }

  // Index into a cumulative probability table.
  std::uint32_t categorical(const std::vector<double>& cumulative) {
    const double u = uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return static_cast<std::uint32_t>(cumulative.size() - 1);
    return static_cast<std::uint32_t>(it - cumulative.begin());
  }

  // Selection sampling (one uniform per slot): a uniformly random
  // k-subset of {0..n-1}, returned sorted.
  std::vector<std::uint32_t> combination(std::uint32_t k, std::uint32_t n) {
    std::vector<std::uint32_t> out;
    out.reserve(k);
    std::uint32_t needed = k;
    for (std::uint32_t slot = 0; slot < n && needed > 0; ++slot) {
      const double take_prob = static_cast<double>(needed) / static_cast<double>(n - slot);
      if (uniform() < take_prob) {
        out.push_back(slot);
        --needed;
      }
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

// Merge `pattern` into `host`: pattern items occupy the chosen slots of
// the lengthened sequence, host items fill the rest, both in order.
Sequence embed(const Sequence& host, const Pattern& pattern, Rng& rng) {
  const std::uint32_t total = static_cast<std::uint32_t>(host.size() + pattern.size());
  const std::vector<std::uint32_t> slots =
      rng.combination(static_cast<std::uint32_t>(pattern.size()), total);
  Sequence out;
  out.reserve(total);
  std::size_t next_slot = 0, from_pattern = 0, from_host = 0;
  for (std::uint32_t pos = 0; pos < total; ++pos) {
    if (next_slot < slots.size() && slots[next_slot] == pos) {
      out.push_back(pattern[from_pattern++]);
      ++next_slot;
    } else {
      out.push_back(host[from_host++]);
    }
  }
  return out;
}

}  // namespace

std::string synth_token(std::uint32_t item, std::uint32_t vocab_size) {
  if (vocab_size <= 26) return std::string(1, static_cast<char>('a' + item));
  return "w" + std::to_string(item);
}

Generated generate(const GenConfig& cfg) {
  if (cfg.vocab_size < 1) throw std::invalid_argument("vocabulary must be nonempty");
  if (cfg.pattern_prob_lo <= 0.0 || cfg.pattern_prob_hi > 1.0 ||
      cfg.pattern_prob_lo > cfg.pattern_prob_hi)
    throw std::invalid_argument("pattern probability range must lie in (0,1]");

  Rng rng(cfg.seed);

  // Flat Dirichlet via normalized unit-rate exponentials.
  std::vector<double> probs(cfg.vocab_size);
  double total = 0.0;
  for (double& p : probs) {
    p = rng.exponential();
    total += p;
  }
  for (double& p : probs) p /= total;

  std::vector<double> cumulative(cfg.vocab_size);
  double acc = 0.0;
  for (std::uint32_t i = 0; i < cfg.vocab_size; ++i) {
    acc += probs[i];
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;

  GroundTruth truth;
  truth.item_distribution = probs;
  for (std::int64_t j = 0; j < cfg.n_patterns; ++j) {
    auto draw_pattern = [&] {
      const std::int64_t len = 2 + rng.poisson(cfg.pattern_length_rate);
      Pattern p(static_cast<std::size_t>(len));
      for (auto& item : p) item = rng.categorical(cumulative);
      return p;
    };
    Pattern p = draw_pattern();
    const bool duplicate = std::any_of(truth.patterns.begin(), truth.patterns.end(),
                                       [&](const EmbeddedPattern& e) { return e.pattern == p; });
    // One retry keeps the recall denominator unambiguous without
    // reshaping the distribution.
    if (duplicate) p = draw_pattern();
    truth.patterns.push_back(
        {std::move(p), rng.uniform(cfg.pattern_prob_lo, cfg.pattern_prob_hi)});
  }

  std::vector<std::int64_t> embed_counts(truth.patterns.size(), 0);
  std::vector<Sequence> records;
  records.reserve(static_cast<std::size_t>(cfg.n_sequences));
  for (std::int64_t s = 0; s < cfg.n_sequences; ++s) {
    const std::int64_t len = 1 + rng.poisson(cfg.base_length_rate);
    Sequence rec(static_cast<std::size_t>(len));
    for (auto& item : rec) item = rng.categorical(cumulative);
    for (std::size_t j = 0; j < truth.patterns.size(); ++j) {
      const EmbeddedPattern& e = truth.patterns[j];
      if (rng.uniform() < e.probability) {
        rec = embed(rec, e.pattern, rng);
        if (!is_subsequence(e.pattern, rec))
          throw std::logic_error("embedding lost the pattern order");
        ++embed_counts[j];
      }
    }
    records.push_back(std::move(rec));
  }

  ItemTable table;
  for (std::uint32_t i = 0; i < cfg.vocab_size; ++i) table.intern(synth_token(i, cfg.vocab_size));
  return Generated{SequenceDatabase(std::move(table), std::move(records)), std::move(truth),
                   std::move(embed_counts)};
}

void write_truth(std::ostream& out, const GroundTruth& truth, const ItemTable& items,
                 const GenConfig& cfg) {
  char buf[64];
  out << "# skopus-gen seed=" << cfg.seed << " items=" << cfg.vocab_size
      << " sequences=" << cfg.n_sequences << " patterns=" << cfg.n_patterns
      << " base_rate=" << cfg.base_length_rate << " pattern_rate=" << cfg.pattern_length_rate
      << " prob_range=[" << cfg.pattern_prob_lo << "," << cfg.pattern_prob_hi << "]\n";
  out << "# item_probs";
  for (double p : truth.item_distribution) {
    std::snprintf(buf, sizeof buf, " %.9f", p);
    out << buf;
  }
  out << '\n';
  for (const EmbeddedPattern& e : truth.patterns) {
    for (std::size_t i = 0; i < e.pattern.size(); ++i) {
      if (i) out << ' ';
      out << items.token(e.pattern[i]);
    }
    std::snprintf(buf, sizeof buf, "\t%.9f", e.probability);
    out << buf << '\n';
  }
}

TruthFile read_truth(std::istream& in) {
  if (!in) throw std::runtime_error("unreadable truth stream");
  TruthFile result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("malformed truth line: " + line);
    std::istringstream tokens(line.substr(0, tab));
    std::vector<std::string> pattern;
    std::string tok;
    while (tokens >> tok) pattern.push_back(tok);
    if (pattern.empty()) throw std::runtime_error("malformed truth line: " + line);
    result.patterns.push_back(std::move(pattern));
    result.probabilities.push_back(std::stod(line.substr(tab + 1)));
  }
  return result;
}

namespace {

bool token_subsequence(const std::vector<std::string>& candidate,
                       const std::vector<std::string>& sequence) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < sequence.size() && j < candidate.size(); ++i) {
    if (sequence[i] == candidate[j]) ++j;
  }
  return j == candidate.size();
}

}  // namespace

RecallReport recall_at_k(const std::vector<std::vector<std::string>>& truth,
                         const std::vector<std::vector<std::string>>& ranked, std::size_t k) {
  RecallReport report;
  const std::size_t limit = std::min(k, ranked.size());
  report.found_rank.assign(truth.size(), 0);
  report.ranked_kind.assign(limit, RankedKind::other);

  std::size_t found = 0;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t r = 0; r < limit; ++r) {
      if (ranked[r] == truth[t]) {
        report.found_rank[t] = r + 1;
        ++found;
        break;
      }
    }
  }
  for (std::size_t r = 0; r < limit; ++r) {
    for (const auto& t : truth) {
      if (ranked[r] == t) {
        report.ranked_kind[r] = RankedKind::exact;
        break;
      }
      if (ranked[r].size() < t.size() && token_subsequence(ranked[r], t))
        report.ranked_kind[r] = RankedKind::subpattern;
    }
  }
  report.recall = truth.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(truth.size());
  return report;
}

}  // namespace skopus
