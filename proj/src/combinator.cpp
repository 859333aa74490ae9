#include "skopus/combinator.hpp"

#include <limits>

namespace skopus {

std::int64_t binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
    if (next > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("binomial overflows 64 bits");
    result = static_cast<std::int64_t>(next);
  }
  return result;
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::uint32_t k = static_cast<std::uint32_t>(c.size());
  if (k == 0 || c[0] == n - k) return false;
  std::uint32_t i = k - 1;
  while (c[i] == n - k + i) --i;
  ++c[i];
  for (std::uint32_t j = i + 1; j < k; ++j) c[j] = c[i] + (j - i);
  return true;
}

std::shared_ptr<const std::vector<BspTemplate>> TemplateCache::bsp_templates(
    std::uint32_t length) {
  if (length < 2) throw std::invalid_argument("BSP undefined below length 2");
  const bool cacheable = length <= cache_max_length_;
  if (cacheable) {
    auto it = bsp_by_length_.find(length);
    if (it != bsp_by_length_.end()) return it->second;
  }
  auto list = std::make_shared<std::vector<BspTemplate>>();
  enumerate_bsp_templates(length, [&](const BspTemplate& t) { list->push_back(t); });
  std::shared_ptr<const std::vector<BspTemplate>> result = list;
  if (cacheable) bsp_by_length_[length] = result;
  return result;
}

namespace {

std::shared_ptr<std::vector<CompositionTemplate>> build_composition_list(std::uint32_t l1,
                                                                         std::uint32_t l2) {
  auto list = std::make_shared<std::vector<CompositionTemplate>>();
  list->reserve(static_cast<std::size_t>(binomial(l1 + l2, l1)));
  enumerate_composition_templates(l1, l2,
                                  [&](const CompositionTemplate& t) { list->push_back(t); });
  return list;
}

// Same interleavings with the two sources swapped, order preserved.
std::shared_ptr<std::vector<CompositionTemplate>> transpose_composition_list(
    const std::vector<CompositionTemplate>& canonical) {
  auto list = std::make_shared<std::vector<CompositionTemplate>>();
  list->reserve(canonical.size());
  for (const CompositionTemplate& t : canonical) {
    CompositionTemplate flipped;
    flipped.len_first = t.len_second;
    flipped.len_second = t.len_first;
    flipped.take_first.reserve(t.take_first.size());
    for (bool b : t.take_first) flipped.take_first.push_back(!b);
    list->push_back(std::move(flipped));
  }
  return list;
}

}  // namespace

std::shared_ptr<const std::vector<CompositionTemplate>> TemplateCache::composition_templates(
    std::uint32_t len_first, std::uint32_t len_second) {
  if (len_first < 1 || len_second < 1)
    throw std::invalid_argument("composition requires nonempty sides");
  const auto key = std::minmax(len_first, len_second);
  const bool canonical_order = len_first <= len_second;
  const bool cacheable = len_first + len_second <= cache_max_length_;

  if (!cacheable) {
    auto canonical = build_composition_list(key.first, key.second);
    return canonical_order ? canonical : transpose_composition_list(*canonical);
  }

  CompEntry& entry = comp_by_length_pair_[key];
  if (!entry.canonical) entry.canonical = build_composition_list(key.first, key.second);
  if (canonical_order) return entry.canonical;
  if (!entry.transposed) entry.transposed = transpose_composition_list(*entry.canonical);
  return entry.transposed;
}

std::pair<Pattern, Pattern> apply_bsp(const Pattern& p, const BspTemplate& t) {
  if (p.size() != t.length) throw std::invalid_argument("pattern length does not match template");
  Pattern left, right;
  left.reserve(t.left_positions.size());
  right.reserve(p.size() - t.left_positions.size());
  std::size_t next_left = 0;
  for (std::uint32_t pos = 0; pos < p.size(); ++pos) {
    if (next_left < t.left_positions.size() && t.left_positions[next_left] == pos) {
      left.push_back(p[pos]);
      ++next_left;
    } else {
      right.push_back(p[pos]);
    }
  }
  return {std::move(left), std::move(right)};
}

Pattern apply_composition(const Pattern& s1, const Pattern& s2, const CompositionTemplate& t) {
  if (s1.size() != t.len_first || s2.size() != t.len_second)
    throw std::invalid_argument("input lengths do not match template");
  Pattern out;
  out.reserve(s1.size() + s2.size());
  std::size_t i = 0, j = 0;
  for (bool first : t.take_first) out.push_back(first ? s1[i++] : s2[j++]);
  return out;
}

}  // namespace skopus
