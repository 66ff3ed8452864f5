#include "xcover/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace xcover {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

bool valid_name(std::string_view name) {
  if (name.empty() || name.front() == '#') return false;
  return std::none_of(name.begin(), name.end(), [](char c) { return is_space(c) || c == ':'; });
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string default_row_name(std::size_t i) { return "R" + std::to_string(i + 1); }
std::string default_column_name(std::size_t i) { return "C" + std::to_string(i + 1); }

Instance parse_xc(std::istream& in) {
  std::vector<std::string> columns;
  std::unordered_map<std::string, ColumnId> column_index;
  std::vector<Row> rows;
  std::unordered_set<std::string> row_names;
  bool have_header = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;

    if (!have_header) {
      for (auto tok : split_ws(body)) {
        std::string name(tok);
        if (!valid_name(name)) throw ParseError(lineno, "invalid column name '" + name + "'");
        if (!column_index.emplace(name, static_cast<ColumnId>(columns.size())).second)
          throw ParseError(lineno, "duplicate column '" + name + "'");
        columns.push_back(std::move(name));
      }
      have_header = true;
      continue;
    }

    auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError(lineno, "expected '<row>: <col> ...'");
    std::string name(trim(body.substr(0, colon)));
    if (!valid_name(name)) throw ParseError(lineno, "invalid row name '" + name + "'");
    if (!row_names.insert(name).second) throw ParseError(lineno, "duplicate row '" + name + "'");

    Row row{std::move(name), {}};
    for (auto tok : split_ws(body.substr(colon + 1))) {
      auto it = column_index.find(std::string(tok));
      if (it == column_index.end())
        throw ParseError(lineno, "unknown column '" + std::string(tok) + "'");
      row.columns.push_back(it->second);
    }
    if (row.columns.empty()) throw ParseError(lineno, "row '" + row.name + "' is empty");
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(lineno + 1, "empty instance: no column header");
  return Instance(std::move(columns), std::move(rows));
}

// Dense format. Optional "#columns: ..." and "#rows: ..." directives before
// the dimension line carry names; without them names default to C1.., R1...
Instance parse_matrix(std::istream& in) {
  std::vector<std::string> column_names;
  std::vector<std::string> row_names;
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  bool have_dims = false;
  std::vector<Row> rows;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      if (have_dims) continue;
      auto directive = [&](std::string_view tag, std::vector<std::string>& dst) {
        if (body.substr(0, tag.size()) != tag) return false;
        for (auto tok : split_ws(body.substr(tag.size()))) dst.emplace_back(tok);
        return true;
      };
      if (!directive("#columns:", column_names)) directive("#rows:", row_names);
      continue;
    }

    auto toks = split_ws(body);
    if (!have_dims) {
      if (toks.size() != 2) throw ParseError(lineno, "expected '<nrows> <ncols>'");
      try {
        nrows = std::stoul(std::string(toks[0]));
        ncols = std::stoul(std::string(toks[1]));
      } catch (const std::exception&) {
        throw ParseError(lineno, "malformed dimensions");
      }
      if (ncols == 0) throw ParseError(lineno, "matrix has no columns");
      if (!column_names.empty() && column_names.size() != ncols)
        throw ParseError(lineno, "#columns directive does not match column count");
      if (!row_names.empty() && row_names.size() != nrows)
        throw ParseError(lineno, "#rows directive does not match row count");
      have_dims = true;
      continue;
    }

    if (rows.size() == nrows) throw ParseError(lineno, "more rows than declared");
    if (toks.size() != ncols)
      throw ParseError(lineno, "expected " + std::to_string(ncols) + " entries, got " +
                                   std::to_string(toks.size()));
    const std::size_t r = rows.size();
    Row row{row_names.empty() ? default_row_name(r) : row_names[r], {}};
    for (std::size_t c = 0; c < ncols; ++c) {
      if (toks[c] == "1") {
        row.columns.push_back(static_cast<ColumnId>(c));
      } else if (toks[c] != "0") {
        throw ParseError(lineno, "entry '" + std::string(toks[c]) + "' is not 0 or 1");
      }
    }
    if (row.columns.empty()) throw ParseError(lineno, "row " + row.name + " is empty");
    rows.push_back(std::move(row));
  }
  if (!have_dims) throw ParseError(lineno + 1, "empty instance: no dimension line");
  if (rows.size() != nrows) throw ParseError(lineno + 1, "fewer rows than declared");

  if (column_names.empty())
    for (std::size_t c = 0; c < ncols; ++c) column_names.push_back(default_column_name(c));
  try {
    return Instance(std::move(column_names), std::move(rows));
  } catch (const StructuralError& e) {
    throw ParseError(1, e.what());
  }
}

}  // namespace

Instance::Instance(std::vector<std::string> columns, std::vector<Row> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  if (columns_.empty()) throw StructuralError("instance has an empty universe");
  std::unordered_set<std::string_view> seen;
  for (const auto& c : columns_) {
    if (!valid_name(c)) throw StructuralError("invalid column name '" + c + "'");
    if (!seen.insert(c).second) throw StructuralError("duplicate column name '" + c + "'");
  }
  seen.clear();
  for (auto& row : rows_) {
    if (!valid_name(row.name)) throw StructuralError("invalid row name '" + row.name + "'");
    if (!seen.insert(row.name).second) throw StructuralError("duplicate row name '" + row.name + "'");
    std::sort(row.columns.begin(), row.columns.end());
    row.columns.erase(std::unique(row.columns.begin(), row.columns.end()), row.columns.end());
    if (row.columns.empty()) throw StructuralError("row '" + row.name + "' is empty");
    if (row.columns.back() >= columns_.size())
      throw StructuralError("row '" + row.name + "' references a column out of range");
  }
}

std::vector<std::vector<RowId>> Instance::column_rows() const {
  std::vector<std::vector<RowId>> out(columns_.size());
  for (RowId r = 0; r < rows_.size(); ++r)
    for (ColumnId c : rows_[r].columns) out[c].push_back(r);
  return out;
}

std::size_t Instance::num_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.columns.size();
  return n;
}

Instance parse_instance(std::istream& in, Format format) {
  return format == Format::xc ? parse_xc(in) : parse_matrix(in);
}

Instance parse_instance(std::string_view text, Format format) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, format);
}

void serialize_instance(const Instance& inst, Format format, std::ostream& out) {
  const auto& cols = inst.columns();
  if (format == Format::xc) {
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? " " : "") << cols[c];
    out << '\n';
    for (const auto& row : inst.rows()) {
      out << row.name << ':';
      for (ColumnId c : row.columns) out << ' ' << cols[c];
      out << '\n';
    }
    return;
  }

  bool default_cols = true;
  for (std::size_t c = 0; c < cols.size(); ++c) default_cols &= cols[c] == default_column_name(c);
  bool default_rows = true;
  for (std::size_t r = 0; r < inst.num_rows(); ++r) default_rows &= inst.row(r).name == default_row_name(r);

  if (!default_cols) {
    out << "#columns:";
    for (const auto& c : cols) out << ' ' << c;
    out << '\n';
  }
  if (!default_rows) {
    out << "#rows:";
    for (const auto& row : inst.rows()) out << ' ' << row.name;
    out << '\n';
  }
  out << inst.num_rows() << ' ' << cols.size() << '\n';
  std::string line;
  for (const auto& row : inst.rows()) {
    line.assign(2 * cols.size() - 1, ' ');
    for (std::size_t c = 0; c < cols.size(); ++c) line[2 * c] = '0';
    for (ColumnId c : row.columns) line[2 * c] = '1';
    out << line << '\n';
  }
}

std::string serialize_instance(const Instance& inst, Format format) {
  std::ostringstream out;
  serialize_instance(inst, format, out);
  return out.str();
}

Format format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  return ends_with(".matrix") || ends_with(".mat") ? Format::matrix : Format::xc;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_instance(in, format_for_path(path));
}

}  // namespace xcover
