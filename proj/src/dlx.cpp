#include "xcover/dlx.hpp"

#include <algorithm>
#include <cassert>

namespace xcover {

DlxMatrix::DlxMatrix(const Instance& inst) : universe_(inst.num_columns()) {
  std::vector<MatrixRow> rows;
  rows.reserve(inst.num_rows());
  for (RowId r = 0; r < inst.num_rows(); ++r) rows.push_back({r, inst.row(r).columns});
  std::vector<ColumnId> all(inst.num_columns());
  for (ColumnId c = 0; c < all.size(); ++c) all[c] = c;
  build(rows, all);
}

DlxMatrix::DlxMatrix(std::size_t universe, std::span<const MatrixRow> rows,
                     std::span<const ColumnId> extra_columns)
    : universe_(universe) {
  build(rows, extra_columns);
}

void DlxMatrix::build(std::span<const MatrixRow> rows, std::span<const ColumnId> extra_columns) {
  std::vector<ColumnId> columns(extra_columns.begin(), extra_columns.end());
  std::size_t entries = 0;
  for (const auto& row : rows) {
    columns.insert(columns.end(), row.columns.begin(), row.columns.end());
    entries += row.columns.size();
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  if (!columns.empty() && columns.back() >= universe_)
    throw StructuralError("matrix column outside the universe");

  const auto num_headers = static_cast<CellHandle>(columns.size());
  cells_.resize(1 + columns.size());
  cells_.reserve(1 + columns.size() + entries);
  cell_row_.assign(1 + columns.size(), kNoRow);
  cell_row_.reserve(1 + columns.size() + entries);
  size_.assign(columns.size(), 0);
  header_column_ = columns;
  column_header_.assign(universe_, 0);

  for (CellHandle h = 0; h <= num_headers; ++h) {
    Cell& x = cells_[h];
    x.left = h == 0 ? num_headers : h - 1;
    x.right = h == num_headers ? 0 : h + 1;
    x.up = x.down = x.head = h;
    if (h > 0) column_header_[columns[h - 1]] = h;
  }
  live_columns_ = static_cast<std::uint32_t>(columns.size());

  RowId prev = kNoRow;
  for (const auto& row : rows) {
    if (prev != kNoRow && row.id <= prev) throw StructuralError("matrix rows must be ascending");
    if (row.columns.empty()) throw StructuralError("matrix row is empty");
    prev = row.id;
    const auto first = static_cast<CellHandle>(cells_.size());
    rows_.push_back(row.id);
    row_first_.push_back(first);
    const auto n = static_cast<CellHandle>(row.columns.size());
    for (CellHandle k = 0; k < n; ++k) {
      const CellHandle h = column_header_[row.columns[k]];
      const auto x = static_cast<CellHandle>(cells_.size());
      Cell cell;
      cell.head = h;
      cell.left = k == 0 ? first + n - 1 : x - 1;
      cell.right = k == n - 1 ? first : x + 1;
      cell.up = cells_[h].up;
      cell.down = h;
      cells_[cells_[h].up].down = x;
      cells_[h].up = x;
      cells_.push_back(cell);
      cell_row_.push_back(row.id);
      ++size_[h - 1];
    }
  }
}

std::optional<CellHandle> DlxMatrix::header_of(ColumnId c) const {
  if (c >= column_header_.size() || column_header_[c] == 0) return std::nullopt;
  return column_header_[c];
}

CellHandle DlxMatrix::require_header(ColumnId c) const {
  auto h = header_of(c);
  if (!h) throw StructuralError("column " + std::to_string(c) + " is not in this matrix");
  return *h;
}

std::optional<CellHandle> DlxMatrix::row_cell(RowId r) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), r);
  if (it == rows_.end() || *it != r) return std::nullopt;
  return row_first_[it - rows_.begin()];
}

CellHandle DlxMatrix::select_header() const {
  assert(!is_empty());
  CellHandle best = cells_[kRoot].right;
  for (CellHandle h = cells_[best].right; h != kRoot; h = cells_[h].right) {
    if (size_[h - 1] < size_[best - 1] ||
        (size_[h - 1] == size_[best - 1] && header_column_[h - 1] < header_column_[best - 1]))
      best = h;
  }
  return best;
}

void DlxMatrix::cover_header(CellHandle h) {
#ifndef NDEBUG
  cover_stack_.push_back(h);
#endif
  Cell* c = cells_.data();
  c[c[h].right].left = c[h].left;
  c[c[h].left].right = c[h].right;
  --live_columns_;
  for (CellHandle i = c[h].down; i != h; i = c[i].down) {
    for (CellHandle j = c[i].right; j != i; j = c[j].right) {
      c[c[j].down].up = c[j].up;
      c[c[j].up].down = c[j].down;
      --size_[c[j].head - 1];
    }
  }
}

std::vector<RowId> DlxMatrix::cover_collect_header(CellHandle h) {
  std::vector<RowId> removed;
  removed.reserve(size_[h - 1]);
  for (CellHandle i = cells_[h].down; i != h; i = cells_[i].down) removed.push_back(cell_row_[i]);
  cover_header(h);
  return removed;
}

void DlxMatrix::uncover_header(CellHandle h) {
#ifndef NDEBUG
  assert(!cover_stack_.empty() && cover_stack_.back() == h && "uncover out of LIFO order");
  cover_stack_.pop_back();
#endif
  Cell* c = cells_.data();
  for (CellHandle i = c[h].up; i != h; i = c[i].up) {
    for (CellHandle j = c[i].left; j != i; j = c[j].left) {
      ++size_[c[j].head - 1];
      c[c[j].down].up = j;
      c[c[j].up].down = j;
    }
  }
  c[c[h].right].left = h;
  c[c[h].left].right = h;
  ++live_columns_;
}

std::optional<RowId> DlxMatrix::single_full_row() const {
  if (is_empty()) return std::nullopt;
  const CellHandle first = cells_[kRoot].right;
  for (CellHandle h = first; h != kRoot; h = cells_[h].right)
    if (size_[h - 1] != 1) return std::nullopt;
  const CellHandle x = cells_[first].down;
  std::uint32_t n = 1;
  for (CellHandle j = cells_[x].right; j != x; j = cells_[j].right) ++n;
  if (n != live_columns_) return std::nullopt;
  return cell_row_[x];
}

std::vector<RowId> DlxMatrix::interacting_rows(ColumnId c) const {
  const CellHandle h = require_header(c);
  std::vector<RowId> out;
  for (CellHandle i = cells_[h].down; i != h; i = cells_[i].down) out.push_back(cell_row_[i]);
  return out;
}

std::vector<ColumnId> DlxMatrix::interacting_cols(CellHandle x) const {
  std::vector<ColumnId> out{column_of(cells_[x].head)};
  for (CellHandle j = cells_[x].right; j != x; j = cells_[j].right) out.push_back(column_of(cells_[j].head));
  return out;
}

std::vector<ColumnId> DlxMatrix::live_column_ids() const {
  std::vector<ColumnId> out;
  out.reserve(live_columns_);
  for_each_live_header([&](CellHandle h) { out.push_back(column_of(h)); });
  return out;
}

std::vector<RowId> DlxMatrix::live_rows() const {
  std::vector<RowId> out;
  for_each_live_header([&](CellHandle h) {
    for (CellHandle i = cells_[h].down; i != h; i = cells_[i].down) out.push_back(cell_row_[i]);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<MatrixRow> DlxMatrix::live_matrix_rows() const {
  std::vector<MatrixRow> out;
  for (RowId r : live_rows()) {
    const CellHandle x = *row_cell(r);
    out.push_back({r, interacting_cols(x)});
  }
  return out;
}

}  // namespace xcover
