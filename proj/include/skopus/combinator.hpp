#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skopus/corpus.hpp"

namespace skopus {

/* Position-level template for a binary sequential partition of a
 * length-`length` pattern: the strictly increasing positions that go to
 * the left part. 1 <= |left_positions| <= floor(length/2); when length is
 * even and the split is exactly half, only templates containing position
 * 0 exist, so each unordered partition appears exactly once. Total
 * template count for a length is 2^(length-1) - 1.
 */
struct BspTemplate {
  std::uint32_t length = 0;
  std::vector<std::uint32_t> left_positions;

  bool operator==(const BspTemplate&) const = default;
};

/* Interleaving template: take_first[k] marks whether output slot k takes
 * the next element of the first input or of the second. Exactly len_first
 * true flags and len_second false flags.
 */
struct CompositionTemplate {
  std::uint32_t len_first = 0;
  std::uint32_t len_second = 0;
  std::vector<bool> take_first;

  bool operator==(const CompositionTemplate&) const = default;
};

// C(n, k) with overflow detection (throws std::overflow_error).
std::int64_t binomial(std::uint32_t n, std::uint32_t k);

/* Lexicographic successor over k-combinations of {0..n-1}. `c` must hold
 * a valid sorted combination; returns false when none follows.
 */
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n);

// Enumerate templates in deterministic order without caching. Used both
// to populate the cache and to stream lengths beyond the cache cap.
template <typename Fn>
void enumerate_bsp_templates(std::uint32_t length, Fn&& fn);
template <typename Fn>
void enumerate_composition_templates(std::uint32_t len_first, std::uint32_t len_second, Fn&& fn);

/* Template store indexed by length (BSPs) and by unordered length pair
 * (compositions); every key is generated at most once. Lengths above
 * `cache_max_length` are generated on demand and not retained. Not
 * thread-safe: confine to one search thread.
 */
class TemplateCache {
 public:
  static constexpr std::uint32_t kDefaultCacheMaxLength = 12;

  explicit TemplateCache(std::uint32_t cache_max_length = kDefaultCacheMaxLength)
      : cache_max_length_(cache_max_length) {}

  std::uint32_t cache_max_length() const { return cache_max_length_; }

  std::shared_ptr<const std::vector<BspTemplate>> bsp_templates(std::uint32_t length);
  std::shared_ptr<const std::vector<CompositionTemplate>> composition_templates(
      std::uint32_t len_first, std::uint32_t len_second);

 private:
  std::uint32_t cache_max_length_;
  std::map<std::uint32_t, std::shared_ptr<const std::vector<BspTemplate>>> bsp_by_length_;
  // Keyed (min,max); each entry holds the canonical orientation plus the
  // lazily built transposed one.
  struct CompEntry {
    std::shared_ptr<const std::vector<CompositionTemplate>> canonical;
    std::shared_ptr<const std::vector<CompositionTemplate>> transposed;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, CompEntry> comp_by_length_pair_;
};

std::pair<Pattern, Pattern> apply_bsp(const Pattern& p, const BspTemplate& t);
Pattern apply_composition(const Pattern& s1, const Pattern& s2, const CompositionTemplate& t);

// --- implementation of the streaming enumerators ---

template <typename Fn>
void enumerate_bsp_templates(std::uint32_t length, Fn&& fn) {
  if (length < 2) throw std::invalid_argument("BSP undefined below length 2");
  BspTemplate t;
  t.length = length;
  for (std::uint32_t l1 = 1; l1 <= length / 2; ++l1) {
    const bool symmetric_half = (length % 2 == 0 && l1 == length / 2);
    std::vector<std::uint32_t> c(l1);
    for (std::uint32_t i = 0; i < l1; ++i) c[i] = i;
    do {
      // The half/half split of an even length would list each unordered
      // partition twice; anchoring position 0 on the left keeps one copy.
      if (symmetric_half && c[0] != 0) break;  // combinations are lexicographic
      t.left_positions = c;
      fn(static_cast<const BspTemplate&>(t));
    } while (next_combination(c, length));
  }
}

template <typename Fn>
void enumerate_composition_templates(std::uint32_t len_first, std::uint32_t len_second,
                                     Fn&& fn) {
  if (len_first < 1 || len_second < 1)
    throw std::invalid_argument("composition requires nonempty sides");
  const std::uint32_t total = len_first + len_second;
  CompositionTemplate t;
  t.len_first = len_first;
  t.len_second = len_second;
  std::vector<std::uint32_t> c(len_first);
  for (std::uint32_t i = 0; i < len_first; ++i) c[i] = i;
  do {
    t.take_first.assign(total, false);
    for (std::uint32_t pos : c) t.take_first[pos] = true;
    fn(static_cast<const CompositionTemplate&>(t));
  } while (next_combination(c, total));
}

}  // namespace skopus
