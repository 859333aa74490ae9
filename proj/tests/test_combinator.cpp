#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "skopus/combinator.hpp"

using namespace skopus;
using namespace skopus::testing;

namespace {

// Unordered pair of sequences, order-normalized for set comparison.
using PartitionPair = std::pair<Pattern, Pattern>;

PartitionPair normalize(Pattern a, Pattern b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

}  // namespace

TEST_CASE("bsp_templates: the paper's seven partitions of a length-4 pattern") {
  TemplateCache cache;
  const auto templates = cache.bsp_templates(4);
  REQUIRE(templates->size() == 7);

  const Pattern abcd{0, 1, 2, 3};
  std::set<PartitionPair> produced;
  for (const BspTemplate& t : *templates) {
    auto [s1, s2] = apply_bsp(abcd, t);
    produced.insert(normalize(std::move(s1), std::move(s2)));
  }
  const std::set<PartitionPair> expected{
      normalize({0}, {1, 2, 3}),    normalize({0, 1}, {2, 3}), normalize({0, 1, 2}, {3}),
      normalize({0, 1, 3}, {2}),    normalize({0, 2}, {1, 3}), normalize({0, 2, 3}, {1}),
      normalize({0, 3}, {1, 2}),
  };
  CHECK(produced == expected);
}

TEST_CASE("bsp_templates: lengths 2 and 3") {
  TemplateCache cache;
  const auto two = cache.bsp_templates(2);
  REQUIRE(two->size() == 1);
  CHECK((*two)[0].left_positions == std::vector<std::uint32_t>{0});

  // Brute-force: nonempty proper position subsets, halved by symmetry.
  const auto three = cache.bsp_templates(3);
  REQUIRE(three->size() == 3);
  std::set<std::vector<std::uint32_t>> lefts;
  for (const BspTemplate& t : *three) lefts.insert(t.left_positions);
  CHECK(lefts == std::set<std::vector<std::uint32_t>>{{0}, {1}, {2}});

  CHECK_THROWS_AS(cache.bsp_templates(1), std::invalid_argument);
}

TEST_CASE("bsp template count law up to length 12") {
  TemplateCache cache;
  for (std::uint32_t len = 2; len <= 12; ++len)
    CHECK(cache.bsp_templates(len)->size() == (1u << (len - 1)) - 1);
}

TEST_CASE("composition template count law for all length pairs up to 12") {
  TemplateCache cache;
  for (std::uint32_t l1 = 1; l1 <= 11; ++l1) {
    for (std::uint32_t l2 = 1; l1 + l2 <= 12; ++l2) {
      CHECK(cache.composition_templates(l1, l2)->size() ==
            static_cast<std::size_t>(binomial(l1 + l2, l1)));
    }
  }
}

TEST_CASE("composition_templates: small cases against the recursive oracle") {
  TemplateCache cache;

  auto applied = [&](const Pattern& s1, const Pattern& s2) {
    std::vector<Pattern> out;
    for (const CompositionTemplate& t : *cache.composition_templates(
             static_cast<std::uint32_t>(s1.size()), static_cast<std::uint32_t>(s2.size())))
      out.push_back(apply_composition(s1, s2, t));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto oracled = [](const Pattern& s1, const Pattern& s2) {
    std::vector<Pattern> out = comp_oracle(s1, s2);
    std::sort(out.begin(), out.end());
    return out;
  };

  // (1,1): both orders of the pair
  CHECK(applied({0}, {1}) == std::vector<Pattern>{{0, 1}, {1, 0}});
  // (1,2): the three insertions of a into <b,c>
  CHECK(applied({0}, {1, 2}) == std::vector<Pattern>{{0, 1, 2}, {1, 0, 2}, {1, 2, 0}});
  CHECK(applied({0}, {1, 2}) == oracled({0}, {1, 2}));
  // (2,2): six interleavings
  CHECK(applied({0, 1}, {2, 3}).size() == 6);
  CHECK(applied({0, 1}, {2, 3}) == oracled({0, 1}, {2, 3}));
  // repeated items: multiset semantics, duplicates preserved
  CHECK(applied({0, 1}, {0, 1}) == oracled({0, 1}, {0, 1}));
  CHECK(applied({0, 1}, {0, 1}).size() == 6);
}

TEST_CASE("property: template application equals the recursive definition, lengths to 5") {
  TemplateCache cache;
  for (std::uint32_t l1 = 1; l1 <= 5; ++l1) {
    for (std::uint32_t l2 = l1; l2 <= 5; ++l2) {
      Pattern s1(l1), s2(l2);
      for (std::uint32_t i = 0; i < l1; ++i) s1[i] = i;
      for (std::uint32_t i = 0; i < l2; ++i) s2[i] = 100 + i;
      std::vector<Pattern> applied;
      for (const CompositionTemplate& t : *cache.composition_templates(l1, l2))
        applied.push_back(apply_composition(s1, s2, t));
      std::vector<Pattern> expected = comp_oracle(s1, s2);
      std::sort(applied.begin(), applied.end());
      std::sort(expected.begin(), expected.end());
      CHECK(applied == expected);
    }
  }
}

TEST_CASE("apply_bsp worked examples") {
  const Pattern abcd{0, 1, 2, 3};
  CHECK(apply_bsp(abcd, {4, {0, 3}}) == std::pair<Pattern, Pattern>{{0, 3}, {1, 2}});

  const Pattern aab{0, 0, 1};
  CHECK(apply_bsp(aab, {3, {1}}) == std::pair<Pattern, Pattern>{{0}, {0, 1}});

  // left = {0} is always the head/tail split
  const Pattern p{7, 8, 9};
  CHECK(apply_bsp(p, {3, {0}}) == std::pair<Pattern, Pattern>{{7}, {8, 9}});

  CHECK_THROWS_AS(apply_bsp(abcd, BspTemplate{3, {0}}), std::invalid_argument);
}

TEST_CASE("apply_composition worked examples") {
  CompositionTemplate second_second_first;
  second_second_first.len_first = 1;
  second_second_first.len_second = 2;
  second_second_first.take_first = {false, false, true};
  CHECK(apply_composition({0}, {1, 2}, second_second_first) == Pattern{1, 2, 0});

  CHECK_THROWS_AS(apply_composition({0, 1}, {2}, second_second_first), std::invalid_argument);
}

TEST_CASE("partition/composition duality for distinct items") {
  TemplateCache cache;
  for (std::uint32_t len = 2; len <= 8; ++len) {
    Pattern p(len);
    for (std::uint32_t i = 0; i < len; ++i) p[i] = i;
    for (const BspTemplate& bsp : *cache.bsp_templates(len)) {
      auto [s1, s2] = apply_bsp(p, bsp);
      std::size_t producing = 0;
      for (const CompositionTemplate& t : *cache.composition_templates(
               static_cast<std::uint32_t>(s1.size()), static_cast<std::uint32_t>(s2.size()))) {
        if (apply_composition(s1, s2, t) == p) ++producing;
      }
      CHECK(producing == 1);
    }
  }
}

TEST_CASE("symmetric lookup transposes sources, order preserved") {
  TemplateCache cache;
  const auto once = cache.composition_templates(2, 3);
  const auto swapped = cache.composition_templates(3, 2);
  REQUIRE(once->size() == swapped->size());
  for (std::size_t i = 0; i < once->size(); ++i) {
    const CompositionTemplate& a = (*once)[i];
    const CompositionTemplate& b = (*swapped)[i];
    CHECK(a.len_first == b.len_second);
    CHECK(a.len_second == b.len_first);
    REQUIRE(a.take_first.size() == b.take_first.size());
    for (std::size_t j = 0; j < a.take_first.size(); ++j)
      CHECK(a.take_first[j] == !b.take_first[j]);
  }
}

TEST_CASE("cache idempotence: cached keys return the identical object") {
  TemplateCache cache;
  CHECK(cache.bsp_templates(5).get() == cache.bsp_templates(5).get());
  CHECK(cache.composition_templates(2, 3).get() == cache.composition_templates(2, 3).get());
  CHECK(cache.composition_templates(3, 2).get() == cache.composition_templates(3, 2).get());

  // above the retention cap generation still works, uncached
  TemplateCache small(4);
  CHECK(small.bsp_templates(6)->size() == 31);
  CHECK(small.bsp_templates(6).get() != small.bsp_templates(6).get());
  CHECK(small.composition_templates(3, 4)->size() == 35);
}
