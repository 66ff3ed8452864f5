#include "xcover/gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace xcover {

GraphInput parse_graph(std::istream& in) {
  GraphInput g;
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto p = line.find_first_not_of(" \t\r");
      if (p != std::string::npos && line[p] != '#') return true;
    }
    return false;
  };
  if (!next()) throw ParseError(lineno + 1, "missing '<n> <m>' header");
  std::size_t m = 0;
  {
    std::istringstream ls(line);
    long long n = -1, mm = -1;
    if (!(ls >> n >> mm) || n < 0 || mm < 0) throw ParseError(lineno, "expected '<n> <m>'");
    g.num_vertices = static_cast<std::uint32_t>(n);
    m = static_cast<std::size_t>(mm);
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  while (g.edges.size() < m) {
    if (!next()) throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edges");
    std::istringstream ls(line);
    long long u = -1, v = -1;
    if (!(ls >> u >> v)) throw ParseError(lineno, "expected '<u> <v>'");
    if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices) throw ParseError(lineno, "vertex out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    const auto a = static_cast<std::uint32_t>(u), b = static_cast<std::uint32_t>(v);
    const std::pair<std::uint32_t, std::uint32_t> e{std::min(a, b), std::max(a, b)};
    if (!seen.insert(e).second) throw ParseError(lineno, "repeated edge");
    g.edges.emplace_back(e.first, e.second);
  }
  if (next()) throw ParseError(lineno, "more edges than declared");
  return g;
}

GraphInput load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_graph(in);
}

namespace {

struct CycleSearch {
  const std::vector<std::vector<std::uint32_t>>& adj;
  const std::vector<bool>& is_element;
  std::size_t max_len;
  std::size_t max_cycles;
  std::uint32_t special = 0;
  std::vector<std::uint32_t> path;
  std::vector<bool> on_path;
  std::vector<std::vector<ColumnId>> found;
  const std::vector<ColumnId>& column_of;

  void dfs(std::uint32_t x) {
    for (std::uint32_t y : adj[x]) {
      if (found.size() >= max_cycles) return;
      if (y == special) {
        // Each cycle is walked in both directions; keep the one whose second
        // vertex is smaller than its last.
        if (path.size() >= 3 && path[1] < path.back()) emit();
        continue;
      }
      if (on_path[y] || path.size() >= max_len) continue;
      on_path[y] = true;
      path.push_back(y);
      dfs(y);
      path.pop_back();
      on_path[y] = false;
    }
  }

  void emit() {
    std::vector<ColumnId> cols;
    for (std::uint32_t v : path)
      if (is_element[v]) cols.push_back(column_of[v]);
    if (cols.empty()) return;
    std::sort(cols.begin(), cols.end());
    found.push_back(std::move(cols));
  }
};

}  // namespace

Instance generate(const GraphInput& g, const GenConfig& cfg) {
  if (!(cfg.element_fraction > 0 && cfg.element_fraction <= 1))
    throw std::invalid_argument("element fraction must be in (0, 1]");
  if (g.num_vertices == 0) throw std::invalid_argument("graph has no vertices");
  const std::uint32_t n = g.num_vertices;
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Components in order of their lowest vertex.
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<bool> seen(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::uint32_t y : adj[comp[i]])
        if (!seen[y]) {
          seen[y] = true;
          comp.push_back(y);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<bool> is_element(n, false);
  for (auto comp : comps) {
    const auto k = static_cast<std::size_t>(std::ceil(cfg.element_fraction * static_cast<double>(comp.size())));
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (comp.size() - i));
      std::swap(comp[i], comp[j]);
      is_element[comp[i]] = true;
    }
  }

  std::vector<std::string> columns;
  std::vector<ColumnId> column_of(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    if (is_element[v]) {
      column_of[v] = static_cast<ColumnId>(columns.size());
      columns.push_back("v" + std::to_string(v));
    }

  std::vector<Row> rows;
  for (const auto& comp : comps) {
    CycleSearch search{adj, is_element, cfg.max_cycle_length, cfg.max_cycles, comp.front(), {}, {}, {}, column_of};
    search.on_path.assign(n, false);
    search.path.push_back(search.special);
    search.on_path[search.special] = true;
    search.dfs(search.special);
    for (auto& cols : search.found) rows.push_back({"S" + std::to_string(rows.size() + 1), std::move(cols)});
  }
  return Instance(std::move(columns), std::move(rows));
}

Instance block_diagonal(const Instance& base, std::size_t k) {
  if (k == 0) throw std::invalid_argument("block_diagonal needs k >= 1");
  std::vector<std::string> columns;
  std::vector<Row> rows;
  const auto width = static_cast<ColumnId>(base.num_columns());
  for (std::size_t copy = 1; copy <= k; ++copy) {
    const std::string suffix = "." + std::to_string(copy);
    const auto offset = static_cast<ColumnId>((copy - 1) * width);
    for (const auto& c : base.columns()) columns.push_back(c + suffix);
    for (const Row& r : base.rows()) {
      Row out{r.name + suffix, r.columns};
      for (auto& c : out.columns) c += offset;
      rows.push_back(std::move(out));
    }
  }
  return Instance(std::move(columns), std::move(rows));
}

}  // namespace xcover
