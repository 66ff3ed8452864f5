#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "xcover/types.hpp"

namespace xcover {

enum class Format { xc, matrix };

struct Row {
  std::string name;
  std::vector<ColumnId> columns;  // sorted, no duplicates

  friend bool operator==(const Row&, const Row&) = default;
};

// An exact-cover problem: a universe of named columns and a family of named
// subsets (rows). Immutable after construction.
class Instance {
 public:
  // Validates and normalizes (sorts and dedups each row's columns). Throws
  // StructuralError on an empty universe, an empty row, an out-of-range
  // column, duplicate or unprintable names.
  Instance(std::vector<std::string> columns, std::vector<Row> rows);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t num_columns() const noexcept { return columns_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }
  const Row& row(RowId r) const { return rows_.at(r); }

  // Column -> rows containing it, in ascending row order.
  std::vector<std::vector<RowId>> column_rows() const;

  std::size_t num_entries() const noexcept;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

Instance parse_instance(std::istream& in, Format format);
Instance parse_instance(std::string_view text, Format format);

void serialize_instance(const Instance& inst, Format format, std::ostream& out);
std::string serialize_instance(const Instance& inst, Format format);

// Picks the format from a file extension: ".matrix" and ".mat" are dense,
// everything else is xc.
Format format_for_path(std::string_view path);

Instance load_instance(const std::string& path);

}  // namespace xcover
