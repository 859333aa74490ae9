#include "skopus/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace skopus {

namespace {

const char kHeader[] = "rank\tpattern\tcount\tsupport\texpected_support\tleverage";

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::string pattern_tokens(const Pattern& p, const ItemTable& items) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += items.token(p[i]);
  }
  return out;
}

void write_ranking_tsv(std::ostream& out, const std::vector<ScoredPattern>& ranking,
                       const ItemTable& items) {
  out << kHeader << '\n';
  std::int64_t rank = 1;
  for (const ScoredPattern& sp : ranking) {
    out << rank++ << '\t' << pattern_tokens(sp.pattern, items) << '\t' << sp.count << '\t'
        << fixed6(sp.support()) << '\t';
    if (sp.expected_support) {
      out << fixed6(sp.expected_support->value()) << '\t' << fixed6(sp.score.value());
    } else {
      out << '\t';
    }
    out << '\n';
  }
}

std::vector<RankingRow> read_ranking_tsv(std::istream& in) {
  if (!in) throw std::runtime_error("unreadable ranking stream");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("malformed ranking TSV: bad header");
  std::vector<RankingRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 6) throw std::runtime_error("malformed ranking TSV row: " + line);
    RankingRow row;
    try {
      row.rank = std::stoll(fields[0]);
      row.pattern = fields[1];
      row.count = std::stoll(fields[2]);
      row.support = std::stod(fields[3]);
      if (!fields[4].empty()) row.expected_support = std::stod(fields[4]);
      if (!fields[5].empty()) row.leverage = std::stod(fields[5]);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed ranking TSV row: " + line);
    }
    if (row.rank != static_cast<std::int64_t>(rows.size()) + 1)
      throw std::runtime_error("malformed ranking TSV: ranks not contiguous");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace skopus
