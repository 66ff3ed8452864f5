#include "xcover/solver.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <future>
#include <unordered_map>
#include <unordered_set>

#include "xcover/oracle.hpp"

namespace xcover {

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::dxz:
      return "dxz";
    case Engine::dxd:
      return "dxd";
    case Engine::dyndxd:
      return "dyndxd";
    case Engine::oracle:
      return "oracle";
  }
  return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
  for (Engine e : {Engine::dxz, Engine::dxd, Engine::dyndxd, Engine::oracle})
    if (engine_name(e) == name) return e;
  return std::nullopt;
}

CacheKey CacheKey::of(const DlxMatrix& m) {
  CacheKey k;
  k.words_.assign((m.universe() + 63) / 64, 0);
  m.for_each_live_header([&](CellHandle h) {
    const ColumnId c = m.column_of(h);
    k.words_[c / 64] |= std::uint64_t{1} << (c % 64);
  });
  return k;
}

std::size_t CacheKey::hash() const {
  std::uint64_t h = words_.size();
  for (std::uint64_t w : words_) h = mix64(h ^ w) + 0x9e3779b97f4a7c15ULL;
  return static_cast<std::size_t>(h);
}

namespace {

// Rows sharing a live column with row x, excluding x itself.
template <class F>
void for_each_neighbor(const DlxMatrix& m, CellHandle x, F&& f) {
  CellHandle j = x;
  do {
    const CellHandle h = m.cell(j).head;
    for (CellHandle i = m.cell(h).down; i != h; i = m.cell(i).down)
      if (i != j) f(m.row_of(i));
    j = m.cell(j).right;
  } while (j != x);
}

struct Removal {
  std::vector<Vertex> rows;
  std::vector<Edge> edges;
};

// Rows that covering header h unlinks, and every live primal edge touching
// them. Computed before the cover, while the rows are still reachable.
Removal removal_for(const DlxMatrix& m, CellHandle h) {
  Removal out;
  for (CellHandle i = m.cell(h).down; i != h; i = m.cell(i).down) {
    const RowId x = m.row_of(i);
    out.rows.push_back(x);
    for_each_neighbor(m, i, [&](RowId y) { out.edges.push_back(make_edge(x, y)); });
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

}  // namespace

std::vector<std::vector<RowId>> bfs_components(const DlxMatrix& m) {
  std::vector<std::vector<RowId>> comps;
  std::unordered_set<RowId> seen;
  for (RowId s : m.live_rows()) {
    if (!seen.insert(s).second) continue;
    std::vector<RowId> comp{s};
    std::deque<RowId> queue{s};
    while (!queue.empty()) {
      const RowId x = queue.front();
      queue.pop_front();
      for_each_neighbor(m, *m.row_cell(x), [&](RowId y) {
        if (seen.insert(y).second) {
          comp.push_back(y);
          queue.push_back(y);
        }
      });
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<Edge> primal_edges(const DlxMatrix& m) {
  std::vector<Edge> edges;
  m.for_each_live_header([&](CellHandle h) {
    std::vector<RowId> rows;
    for (CellHandle i = m.cell(h).down; i != h; i = m.cell(i).down) rows.push_back(m.row_of(i));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = a + 1; b < rows.size(); ++b) edges.push_back(make_edge(rows[a], rows[b]));
  });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

ComponentSet make_component_set(const DlxMatrix& m) {
  const std::vector<RowId> rows = m.live_rows();
  const std::vector<Edge> edges = primal_edges(m);
  return ComponentSet::build(rows, edges);
}

std::vector<DlxMatrix> decompose_matrix(const DlxMatrix& m, const std::vector<std::vector<RowId>>& components) {
  const std::vector<RowId> live = m.live_rows();
  std::unordered_map<RowId, std::size_t> owner;
  for (std::size_t k = 0; k < components.size(); ++k)
    for (RowId r : components[k])
      if (!owner.emplace(r, k).second) throw StructuralError("row in more than one component");
  if (owner.size() != live.size() ||
      !std::all_of(live.begin(), live.end(), [&](RowId r) { return owner.count(r) != 0; }))
    throw StructuralError("components do not partition the live rows");

  std::vector<std::vector<MatrixRow>> parts(components.size());
  for (RowId r : live) {
    const CellHandle x = *m.row_cell(r);
    parts[owner[r]].push_back({r, m.interacting_cols(x)});
  }
  std::vector<ColumnId> rowless;
  m.for_each_live_header([&](CellHandle h) {
    if (m.size(h) == 0) rowless.push_back(m.column_of(h));
  });

  std::vector<DlxMatrix> out;
  out.reserve(components.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k == 0)
      out.emplace_back(m.universe(), parts[k], rowless);
    else
      out.emplace_back(m.universe(), parts[k]);
  }
  return out;
}

Compiler::Compiler(SolveConfig cfg, std::shared_ptr<NodeStore> store)
    : cfg_(cfg), store_(store ? std::move(store) : std::make_shared<NodeStore>(cfg.store)) {
  if (cfg_.threads < 1) throw std::invalid_argument("threads must be at least 1");
  spare_threads_ = static_cast<int>(cfg_.threads) - 1;
  if (cfg_.timeout)
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(*cfg_.timeout);
}

void Compiler::tick() const {
  if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw SolveTimeout();
}

bool Compiler::claim_thread() {
  int n = spare_threads_.load();
  while (n > 0)
    if (spare_threads_.compare_exchange_weak(n, n - 1)) return true;
  return false;
}

bool Compiler::lookup(const CacheKey& key, NodeId* out) {
  if (!cfg_.use_cache) return false;
  if (auto hit = cache_.find(key)) {
    ++hits_;
    *out = *hit;
    return true;
  }
  ++misses_;
  return false;
}

NodeId Compiler::dxz(DlxMatrix& m) { return search(m, nullptr, Mode::zbdd); }
NodeId Compiler::dxd(DlxMatrix& m) { return search(m, nullptr, Mode::bfs); }
NodeId Compiler::dyndxd(DlxMatrix& m, ComponentSet& cc) { return search(m, &cc, Mode::dynamic); }

NodeId Compiler::run(DlxMatrix& m) {
  switch (cfg_.engine) {
    case Engine::dxz:
      return dxz(m);
    case Engine::dxd:
      return dxd(m);
    case Engine::dyndxd: {
      ComponentSet cc = make_component_set(m);
      return dyndxd(m, cc);
    }
    case Engine::oracle:
      break;
  }
  throw std::invalid_argument("the oracle engine does not compile a diagram");
}

NodeId Compiler::search(DlxMatrix& m, ComponentSet* cc, Mode mode) {
  tick();
  if (m.is_empty()) return kTop;
  if (mode != Mode::zbdd)
    if (auto r = m.single_full_row()) return store_->mk_literal(*r);

  const CacheKey key = CacheKey::of(m);
  NodeId result;
  if (lookup(key, &result)) return result;

  if (mode == Mode::bfs) {
    auto comps = bfs_components(m);
    if (comps.size() >= 2) result = decompose(m, comps, mode);
    else result = branch(m, cc, mode);
  } else if (mode == Mode::dynamic && cc->num_components() >= 2) {
    result = decompose(m, cc->partition(), mode);
  } else {
    result = branch(m, cc, mode);
  }
  if (cfg_.use_cache) cache_.insert_or_assign(key, result);
  return result;
}

NodeId Compiler::solve_part(DlxMatrix& m, Mode mode) {
  if (mode == Mode::dynamic) {
    ComponentSet cc = make_component_set(m);
    return search(m, &cc, mode);
  }
  return search(m, nullptr, mode);
}

NodeId Compiler::decompose(DlxMatrix& m, const std::vector<std::vector<RowId>>& comps, Mode mode) {
  subs_ += comps.size();
  std::vector<DlxMatrix> parts = decompose_matrix(m, comps);
  std::vector<NodeId> results(parts.size(), kBottom);
  std::vector<bool> spawned(parts.size(), false);
  std::vector<std::future<void>> pending;

  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].num_rows() < cfg_.spawn_threshold || !claim_thread()) continue;
    spawned[k] = true;
    pending.push_back(std::async(std::launch::async, [this, &parts, &results, k, mode] {
      struct Release {
        std::atomic<int>& n;
        ~Release() { ++n; }
      } release{spare_threads_};
      results[k] = solve_part(parts[k], mode);
    }));
  }

  std::exception_ptr failure;
  try {
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (spawned[k]) continue;
      results[k] = solve_part(parts[k], mode);
      if (results[k] == kBottom) break;
    }
  } catch (...) {
    failure = std::current_exception();
  }
  for (auto& f : pending) {
    try {
      f.get();
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return store_->mk_decomposable(std::move(results));
}

NodeId Compiler::branch(DlxMatrix& m, ComponentSet* cc, Mode mode) {
  const CellHandle h = m.select_header();
  Removal top;
  if (cc) {
    top = removal_for(m, h);
    m.cover_header(h);
    cc->dec_update(top.rows, top.edges);
  } else {
    m.cover_header(h);
  }

  NodeId alpha = kBottom;
  std::vector<std::pair<CellHandle, Removal>> undo;
  for (CellHandle i = m.cell(h).down; i != h; i = m.cell(i).down) {
    for (CellHandle j = m.cell(i).right; j != i; j = m.cell(j).right) {
      const CellHandle hj = m.cell(j).head;
      Removal rem;
      if (cc) rem = removal_for(m, hj);
      m.cover_header(hj);
      if (cc) cc->dec_update(rem.rows, rem.edges);
      undo.emplace_back(hj, std::move(rem));
    }
    const NodeId beta = search(m, cc, mode);
    alpha = store_->mk_decision(m.row_of(i), beta, alpha);
    while (!undo.empty()) {
      auto& [hj, rem] = undo.back();
      m.uncover_header(hj);
      if (cc) cc->inc_update(rem.rows, rem.edges);
      undo.pop_back();
    }
  }

  m.uncover_header(h);
  if (cc) cc->inc_update(top.rows, top.edges);
  return alpha;
}

SolveReport solve(const Instance& inst, const SolveConfig& cfg) {
  SolveReport report;
  report.engine = cfg.engine;
  report.threads = cfg.threads;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  if (cfg.engine == Engine::oracle) {
    report.count = count_covers(inst);
    report.time_ms = elapsed();
    return report;
  }

  Compiler compiler(cfg);
  report.store = compiler.store_ptr();
  DlxMatrix m(inst);
  try {
    const NodeId root = compiler.run(m);
    report.root = root;
    report.count = compiler.store().count(root);
    report.nodes = compiler.store().node_count(root);
  } catch (const SolveTimeout&) {
    report.status = SolveReport::Status::timeout;
  }
  report.subs = compiler.subs();
  report.cache_hits = compiler.cache_hits();
  report.cache_misses = compiler.cache_misses();
  report.time_ms = elapsed();
  return report;
}

}  // namespace xcover
