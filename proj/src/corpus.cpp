#include "skopus/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace skopus {

ItemId ItemTable::intern(std::string_view token) {
  auto it = token_to_id_.find(std::string(token));
  if (it != token_to_id_.end()) return it->second;
  const ItemId id = static_cast<ItemId>(id_to_token_.size());
  id_to_token_.emplace_back(token);
  per_item_support_count_.push_back(0);
  token_to_id_.emplace(id_to_token_.back(), id);
  return id;
}

std::optional<ItemId> ItemTable::find(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

SequenceDatabase::SequenceDatabase(ItemTable table, std::vector<Sequence> records)
    : table_(std::move(table)), records_(std::move(records)) {
  const std::size_t n_items = table_.size();
  item_covers_.resize(n_items);
  record_indexes_.resize(records_.size());
  table_.per_item_support_count_.assign(n_items, 0);

  std::vector<std::pair<ItemId, std::uint32_t>> occ;
  for (std::uint32_t r = 0; r < records_.size(); ++r) {
    const Sequence& rec = records_[r];
    max_record_length_ = std::max(max_record_length_, rec.size());

    occ.clear();
    occ.reserve(rec.size());
    for (std::uint32_t pos = 0; pos < rec.size(); ++pos) {
      if (rec[pos] >= n_items) throw std::logic_error("item id out of range");
      occ.emplace_back(rec[pos], pos);
    }
    std::sort(occ.begin(), occ.end());

    RecordIndex& idx = record_indexes_[r];
    idx.positions.reserve(occ.size());
    idx.offsets.push_back(0);
    for (std::size_t j = 0; j < occ.size(); ++j) {
      if (j == 0 || occ[j].first != occ[j - 1].first) {
        idx.items.push_back(occ[j].first);
        if (j != 0) idx.offsets.push_back(static_cast<std::uint32_t>(j));
        item_covers_[occ[j].first].push_back({r, static_cast<std::int32_t>(occ[j].second)});
        ++table_.per_item_support_count_[occ[j].first];
      }
      idx.positions.push_back(occ[j].second);
    }
    if (!occ.empty()) idx.offsets.push_back(static_cast<std::uint32_t>(occ.size()));
  }
}

std::span<const std::uint32_t> SequenceDatabase::positions_in(ItemId id,
                                                              std::uint32_t record) const {
  const RecordIndex& idx = record_indexes_[record];
  auto it = std::lower_bound(idx.items.begin(), idx.items.end(), id);
  if (it == idx.items.end() || *it != id) return {};
  const std::size_t j = static_cast<std::size_t>(it - idx.items.begin());
  return std::span<const std::uint32_t>(idx.positions.data() + idx.offsets[j],
                                        idx.offsets[j + 1] - idx.offsets[j]);
}

SequenceDatabase parse_database(std::istream& in) {
  if (!in) throw std::runtime_error("unreadable input stream");
  ItemTable table;
  std::vector<Sequence> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    Sequence rec;
    std::size_t i = 0;
    const std::size_t len = line.size();
    while (i < len) {
      while (i < len && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < len && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) rec.push_back(table.intern(std::string_view(line).substr(start, i - start)));
    }
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading database");
  return SequenceDatabase(std::move(table), std::move(records));
}

SequenceDatabase load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return parse_database(in);
}

void serialize_database(const SequenceDatabase& db, std::ostream& out) {
  for (const Sequence& rec : db.records()) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (i) out << ' ';
      out << db.items().token(rec[i]);
    }
    out << '\n';
  }
}

bool is_subsequence(const Pattern& candidate, const Sequence& record) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < record.size() && j < candidate.size(); ++i) {
    if (record[i] == candidate[j]) ++j;
  }
  return j == candidate.size();
}

CoverState cover(const Pattern& p, const SequenceDatabase& db) {
  if (p.empty()) throw std::invalid_argument("cover requires a nonempty pattern");
  if (p[0] >= db.items().size()) throw std::logic_error("unknown item id");
  CoverState state;
  state.entries = db.item_cover(p[0]);
  for (std::size_t j = 1; j < p.size(); ++j) state = extend_cover(state, p[j], db);
  return state;
}

CoverState extend_cover(const CoverState& parent, ItemId suffix_item,
                        const SequenceDatabase& db) {
  if (suffix_item >= db.items().size()) throw std::logic_error("unknown item id");
  CoverState child;
  child.entries.reserve(parent.entries.size());
  for (const CoverEntry& e : parent.entries) {
    const auto positions = db.positions_in(suffix_item, e.record);
    // first occurrence strictly after the parent match end
    const std::uint32_t from = e.match_end < 0 ? 0u : static_cast<std::uint32_t>(e.match_end) + 1u;
    auto it = std::lower_bound(positions.begin(), positions.end(), from);
    if (it != positions.end()) child.entries.push_back({e.record, static_cast<std::int32_t>(*it)});
  }
  return child;
}

std::int64_t count(const Pattern& p, const SequenceDatabase& db) {
  return cover(p, db).count();
}

double support(const Pattern& p, const SequenceDatabase& db) {
  if (db.record_count() == 0) throw std::runtime_error("empty database");
  return static_cast<double>(count(p, db)) / static_cast<double>(db.record_count());
}

}  // namespace skopus
