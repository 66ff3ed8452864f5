#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "xcover/instance.hpp"
#include "xcover/types.hpp"

namespace xcover {

// Index into the cell arena. Cell 0 is the root of the header row, cells
// 1..num_headers are column headers, the rest are matrix entries.
using CellHandle = std::int32_t;

struct Cell {
  CellHandle left = 0;
  CellHandle right = 0;
  CellHandle up = 0;
  CellHandle down = 0;
  CellHandle head = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Complete link state of a DlxMatrix, for restoration checks.
struct DlxSnapshot {
  std::vector<Cell> cells;
  std::vector<std::uint32_t> sizes;
  std::uint32_t live_columns = 0;

  friend bool operator==(const DlxSnapshot&, const DlxSnapshot&) = default;
};

// A (sub)matrix row: global row id plus its global columns, ascending.
struct MatrixRow {
  RowId id;
  std::vector<ColumnId> columns;
};

// Dancing-links mesh over an incidence matrix. Row and column ids are global
// (they refer to the originating Instance), so sub-matrices produced by
// decomposition keep the same identifiers.
//
// cover/uncover follow a strict LIFO discipline: uncover(c) must undo the
// most recent cover that has not been undone yet.
class DlxMatrix {
 public:
  explicit DlxMatrix(const Instance& inst);

  // Builds a matrix from rows given in ascending id order. The column set is
  // the union of the rows' columns, plus any extra_columns (which may have no
  // rows at all). universe is the global column count used for cache keys.
  DlxMatrix(std::size_t universe, std::span<const MatrixRow> rows,
            std::span<const ColumnId> extra_columns = {});

  static constexpr CellHandle kRoot = 0;

  std::size_t universe() const noexcept { return universe_; }
  std::size_t num_headers() const noexcept { return header_column_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }
  std::size_t num_cells() const noexcept { return cells_.size() - 1 - header_column_.size(); }
  std::uint32_t live_columns() const noexcept { return live_columns_; }

  const Cell& cell(CellHandle x) const { return cells_[x]; }
  bool is_header(CellHandle x) const noexcept {
    return x > 0 && static_cast<std::size_t>(x) <= header_column_.size();
  }

  // Header handle of a column, or nullopt if the column is not part of this
  // matrix.
  std::optional<CellHandle> header_of(ColumnId c) const;
  ColumnId column_of(CellHandle header) const { return header_column_[header - 1]; }
  std::uint32_t size(CellHandle header) const { return size_[header - 1]; }
  RowId row_of(CellHandle x) const { return cell_row_[x]; }
  // First cell of a row (in R-order), or nullopt if the row is not here.
  std::optional<CellHandle> row_cell(RowId r) const;

  // Live column with the fewest rows; ties go to the smallest column id.
  // Requires at least one live column.
  CellHandle select_header() const;
  ColumnId select_column() const { return column_of(select_header()); }

  void cover_header(CellHandle header);
  void uncover_header(CellHandle header);
  // cover_header(), additionally returning the rows it unlinked, in D-order.
  std::vector<RowId> cover_collect_header(CellHandle header);

  void cover(ColumnId c) { cover_header(require_header(c)); }
  void uncover(ColumnId c) { uncover_header(require_header(c)); }
  std::vector<RowId> cover_collect(ColumnId c) { return cover_collect_header(require_header(c)); }

  bool is_empty() const noexcept { return cells_[kRoot].right == kRoot; }
  // The row r if r is the only live row and it meets every live column.
  std::optional<RowId> single_full_row() const;

  // Live rows of a live column in D-order.
  std::vector<RowId> interacting_rows(ColumnId c) const;
  // Columns of the row owning cell x, in R-order starting at x.
  std::vector<ColumnId> interacting_cols(CellHandle x) const;

  template <class F>
  void for_each_live_header(F&& f) const {
    for (CellHandle h = cells_[kRoot].right; h != kRoot; h = cells_[h].right) f(h);
  }
  std::vector<ColumnId> live_column_ids() const;
  // Live rows in ascending id order.
  std::vector<RowId> live_rows() const;
  // Live part of the matrix as rows (ascending ids), e.g. for decomposition.
  std::vector<MatrixRow> live_matrix_rows() const;

  DlxSnapshot snapshot() const { return {cells_, size_, live_columns_}; }

 private:
  CellHandle require_header(ColumnId c) const;
  void build(std::span<const MatrixRow> rows, std::span<const ColumnId> extra_columns);

  std::size_t universe_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::uint32_t> size_;          // per header, index header-1
  std::vector<ColumnId> header_column_;      // per header, index header-1
  std::vector<std::int32_t> column_header_;  // global column -> header, or 0
  std::vector<RowId> cell_row_;              // per cell; kNoRow for root/headers
  std::vector<RowId> rows_;                  // ascending global ids
  std::vector<CellHandle> row_first_;        // parallel to rows_
  std::uint32_t live_columns_ = 0;
#ifndef NDEBUG
  std::vector<CellHandle> cover_stack_;
#endif
};

}  // namespace xcover
