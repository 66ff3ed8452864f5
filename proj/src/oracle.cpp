#include "xcover/oracle.hpp"

#include <algorithm>

namespace xcover {

namespace {

constexpr std::size_t kUncappedRowLimit = 25;

struct Search {
  std::size_t num_columns;
  const std::vector<std::vector<ColumnId>>& rows;
  std::vector<std::vector<RowId>> by_column;
  std::vector<bool> covered;
  Cover chosen;

  Search(std::size_t n, const std::vector<std::vector<ColumnId>>& r) : num_columns(n), rows(r), by_column(n), covered(n) {
    for (RowId i = 0; i < rows.size(); ++i)
      for (ColumnId c : rows[i]) {
        if (c >= n) throw StructuralError("row column out of range");
        by_column[c].push_back(i);
      }
  }

  bool fits(RowId r) const {
    return std::none_of(rows[r].begin(), rows[r].end(), [&](ColumnId c) { return covered[c]; });
  }

  void set(RowId r, bool v) {
    for (ColumnId c : rows[r]) covered[c] = v;
  }

  template <class Emit>
  void run(std::size_t from, Emit&& emit) {
    std::size_t col = from;
    while (col < num_columns && covered[col]) ++col;
    if (col == num_columns) {
      emit(chosen);
      return;
    }
    for (RowId r : by_column[col]) {
      if (!fits(r)) continue;
      set(r, true);
      chosen.push_back(r);
      run(col + 1, emit);
      chosen.pop_back();
      set(r, false);
    }
  }
};

std::vector<std::vector<ColumnId>> row_columns(const Instance& inst) {
  std::vector<std::vector<ColumnId>> rows;
  for (const Row& r : inst.rows()) rows.push_back(r.columns);
  return rows;
}

}  // namespace

std::vector<Cover> enumerate_covers(std::size_t num_columns, const std::vector<std::vector<ColumnId>>& rows,
                                    std::optional<std::size_t> cap) {
  if (!cap && rows.size() > kUncappedRowLimit)
    throw std::invalid_argument("uncapped enumeration needs at most 25 rows");
  Search s(num_columns, rows);
  std::vector<Cover> out;
  s.run(0, [&](const Cover& c) {
    if (cap && out.size() == *cap) {
      for (auto& x : out) std::sort(x.begin(), x.end());
      std::sort(out.begin(), out.end());
      throw CoverLimitExceeded(std::move(out));
    }
    Cover sorted = c;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cover> enumerate_covers(const Instance& inst, std::optional<std::size_t> cap) {
  return enumerate_covers(inst.num_columns(), row_columns(inst), cap);
}

BigCount count_covers(std::size_t num_columns, const std::vector<std::vector<ColumnId>>& rows) {
  Search s(num_columns, rows);
  BigCount n = 0;
  s.run(0, [&](const Cover&) { ++n; });
  return n;
}

BigCount count_covers(const Instance& inst) { return count_covers(inst.num_columns(), row_columns(inst)); }

}  // namespace xcover
