#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xcover {

// Rows and columns are dense indices into an Instance; names only exist at
// the I/O boundary.
using RowId = std::uint32_t;
using ColumnId = std::uint32_t;

inline constexpr RowId kNoRow = std::numeric_limits<RowId>::max();

// Solution counts overflow every machine word on realistic instances.
using BigCount = boost::multiprecision::cpp_int;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Raised when a caller breaks a structural precondition (malformed diagram
// node, non-partition decomposition, invalid instance data).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by the dynamic connectivity structures on precondition violations.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xcover
