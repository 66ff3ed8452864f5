#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "xcover/instance.hpp"
#include "xcover/types.hpp"

namespace xcover {

using Cover = std::vector<RowId>;  // ascending

// Thrown when enumeration finds more covers than the caller allowed; carries
// the covers found before stopping.
class CoverLimitExceeded : public std::runtime_error {
 public:
  CoverLimitExceeded(std::vector<Cover> partial)
      : std::runtime_error("cover limit exceeded"), partial_(std::move(partial)) {}
  const std::vector<Cover>& partial() const noexcept { return partial_; }

 private:
  std::vector<Cover> partial_;
};

// Plain backtracking over the rows, branching on the lowest uncovered column.
// Results are in lexicographic order. Without a cap, at most 25 rows are
// accepted.
std::vector<Cover> enumerate_covers(const Instance& inst, std::optional<std::size_t> cap = std::nullopt);
// Same, for a raw family over columns 0..num_columns-1 (which may be empty).
std::vector<Cover> enumerate_covers(std::size_t num_columns, const std::vector<std::vector<ColumnId>>& rows,
                                    std::optional<std::size_t> cap = std::nullopt);

BigCount count_covers(const Instance& inst);
BigCount count_covers(std::size_t num_columns, const std::vector<std::vector<ColumnId>>& rows);

}  // namespace xcover
