#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skopus/expectation.hpp"

namespace skopus {

// One row of the mining output table.
struct RankingRow {
  std::int64_t rank = 0;
  std::string pattern;  // tokens joined by single spaces
  std::int64_t count = 0;
  double support = 0.0;
  std::optional<double> expected_support;
  std::optional<double> leverage;
};

std::string pattern_tokens(const Pattern& p, const ItemTable& items);

/* TSV with header `rank pattern count support expected_support leverage`;
 * decimals carry six fractional digits. The expectation columns are empty
 * under the support measure.
 */
void write_ranking_tsv(std::ostream& out, const std::vector<ScoredPattern>& ranking,
                       const ItemTable& items);

// Throws std::runtime_error on malformed input.
std::vector<RankingRow> read_ranking_tsv(std::istream& in);

}  // namespace skopus
