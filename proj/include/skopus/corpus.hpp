#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skopus {

using ItemId = std::uint32_t;

// A database record: ordered list of interned item ids.
using Sequence = std::vector<ItemId>;

// A sequential pattern. Items may repeat (<a,a,b> is legal).
using Pattern = std::vector<ItemId>;

struct PatternHash {
  std::size_t operator()(const Pattern& p) const {
    // FNV-1a over the id words.
    std::uint64_t h = 1469598103934665603ull;
    for (ItemId id : p) {
      h ^= id;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/* Interning of string tokens to dense integer ids. All internal work is
 * on ids; tokens are only touched at the I/O boundary.
 */
class ItemTable {
 public:
  ItemId intern(std::string_view token);
  std::optional<ItemId> find(std::string_view token) const;
  const std::string& token(ItemId id) const { return id_to_token_[id]; }
  std::size_t size() const { return id_to_token_.size(); }

  // Number of records containing the item at least once.
  std::int64_t support_count(ItemId id) const { return per_item_support_count_[id]; }

 private:
  friend class SequenceDatabase;
  std::unordered_map<std::string, ItemId> token_to_id_;
  std::vector<std::string> id_to_token_;
  std::vector<std::int64_t> per_item_support_count_;
};

struct CoverEntry {
  std::uint32_t record;
  // Smallest index at which a greedy match of the pattern can end in this
  // record. -1 is reserved for the root (empty pattern) cover.
  std::int32_t match_end;
};

// Cover of a pattern: covering record ids with leftmost match ends,
// sorted by record id.
struct CoverState {
  std::vector<CoverEntry> entries;
  std::int64_t count() const { return static_cast<std::int64_t>(entries.size()); }
};

/* Immutable multiset of records plus per-item indexes:
 *   - item_cover(i): covering records of <i> with the first position of i
 *     (this is the stored per-item cover the bootstrap relies on);
 *   - positions_in(i, r): sorted positions of item i inside record r,
 *     the structure behind O(log) incremental cover extension.
 * Safe to share across threads for reading once built.
 */
class SequenceDatabase {
 public:
  SequenceDatabase(ItemTable table, std::vector<Sequence> records);

  std::int64_t record_count() const { return static_cast<std::int64_t>(records_.size()); }
  const std::vector<Sequence>& records() const { return records_; }
  const Sequence& record(std::uint32_t r) const { return records_[r]; }
  const ItemTable& items() const { return table_; }
  std::size_t max_record_length() const { return max_record_length_; }

  const std::vector<CoverEntry>& item_cover(ItemId id) const { return item_covers_[id]; }
  std::span<const std::uint32_t> positions_in(ItemId id, std::uint32_t record) const;

 private:
  // Per record: distinct items sorted by id, with their occurrence
  // positions packed into one flat buffer.
  struct RecordIndex {
    std::vector<ItemId> items;
    std::vector<std::uint32_t> offsets;  // size items.size()+1
    std::vector<std::uint32_t> positions;
  };

  ItemTable table_;
  std::vector<Sequence> records_;
  std::vector<RecordIndex> record_indexes_;
  std::vector<std::vector<CoverEntry>> item_covers_;
  std::size_t max_record_length_ = 0;
};

/* Line-oriented ingestion: one record per line, tokens separated by runs
 * of whitespace, '#' lines are comments. Blank lines are empty records
 * and count toward n.
 */
SequenceDatabase parse_database(std::istream& in);
SequenceDatabase load_database(const std::string& path);
void serialize_database(const SequenceDatabase& db, std::ostream& out);

// Greedy left-to-right containment test (sound and complete for
// subsequence matching).
bool is_subsequence(const Pattern& candidate, const Sequence& record);

CoverState cover(const Pattern& p, const SequenceDatabase& db);

// Incremental extension: entries of `parent` whose record holds
// `suffix_item` strictly after the parent match end. Equals
// cover(parent_pattern + suffix_item) exactly, match ends included.
CoverState extend_cover(const CoverState& parent, ItemId suffix_item,
                        const SequenceDatabase& db);

std::int64_t count(const Pattern& p, const SequenceDatabase& db);
double support(const Pattern& p, const SequenceDatabase& db);

}  // namespace skopus
