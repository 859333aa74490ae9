#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skopus/corpus.hpp"

namespace skopus {

struct GenConfig {
  std::uint32_t vocab_size = 10;
  std::int64_t n_sequences = 10000;
  double base_length_rate = 9.0;    // record length ~ Pois(rate) + 1
  std::int64_t n_patterns = 0;
  double pattern_length_rate = 1.0;  // pattern length ~ Pois(rate) + 2
  double pattern_prob_lo = 0.05;
  double pattern_prob_hi = 0.2;
  std::uint64_t seed = 0;
};

struct EmbeddedPattern {
  Pattern pattern;
  double probability;  // per-sequence embedding probability
};

struct GroundTruth {
  std::vector<EmbeddedPattern> patterns;
  std::vector<double> item_distribution;
};

struct Generated {
  SequenceDatabase db;
  GroundTruth truth;
  // How many records each pattern was actually merged into.
  std::vector<std::int64_t> embed_counts;
};

/* Seeded corpus generation: item probabilities from a flat Dirichlet,
 * i.i.d. records with shifted-Poisson lengths, then each pattern
 * independently merged into each record with its probability by a
 * uniformly random choice of insertion slots (both orders preserved).
 * Identical config and seed give identical output, bit for bit.
 */
Generated generate(const GenConfig& cfg);

// Synthetic token names: 'a'..'z' for small vocabularies, w<i> beyond.
std::string synth_token(std::uint32_t item, std::uint32_t vocab_size);

void write_truth(std::ostream& out, const GroundTruth& truth, const ItemTable& items,
                 const GenConfig& cfg);

struct TruthFile {
  std::vector<std::vector<std::string>> patterns;
  std::vector<double> probabilities;
};
TruthFile read_truth(std::istream& in);

enum class RankedKind { exact, subpattern, other };

struct RecallReport {
  double recall = 0.0;
  // Per truth pattern: 1-based rank of its exact match, or 0 if missing.
  std::vector<std::size_t> found_rank;
  // Per ranked pattern within the top k.
  std::vector<RankedKind> ranked_kind;
};

/* Exact-match recall of the embedded patterns over the top-k ranking,
 * with every ranked pattern classified as an exact match, a strict
 * subsequence of some embedded pattern, or neither.
 */
RecallReport recall_at_k(const std::vector<std::vector<std::string>>& truth,
                         const std::vector<std::vector<std::string>>& ranked, std::size_t k);

}  // namespace skopus
