#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "xcover/concurrent.hpp"
#include "xcover/diagram.hpp"
#include "xcover/dlx.hpp"
#include "xcover/dynconn.hpp"
#include "xcover/instance.hpp"

namespace xcover {

enum class Engine { dxz, dxd, dyndxd, oracle };

std::string_view engine_name(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

class SolveTimeout : public std::runtime_error {
 public:
  SolveTimeout() : std::runtime_error("solve deadline exceeded") {}
};

struct SolveConfig {
  Engine engine = Engine::dxd;
  unsigned threads = 1;
  // Components at a decomposition point with fewer rows than this are
  // solved inline rather than handed to another thread.
  std::size_t spawn_threshold = 8;
  bool use_cache = true;
  std::optional<std::chrono::duration<double>> timeout;
  StoreOptions store;
};

// Set of live columns as a bitset over the global column universe. Live rows
// are exactly the rows whose columns are all live, so this determines the
// remaining subproblem.
class CacheKey {
 public:
  static CacheKey of(const DlxMatrix& m);

  bool operator==(const CacheKey&) const = default;
  std::size_t hash() const;
  bool test(ColumnId c) const { return (words_[c / 64] >> (c % 64)) & 1; }

 private:
  std::vector<std::uint64_t> words_;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const { return k.hash(); }
};

// Connected components of the primal graph on the live rows (rows adjacent
// iff they share a live column). Each component is sorted; components are
// ordered by their smallest row.
std::vector<std::vector<RowId>> bfs_components(const DlxMatrix& m);

// Live primal graph edges, each (smaller row, larger row), sorted.
std::vector<Edge> primal_edges(const DlxMatrix& m);

ComponentSet make_component_set(const DlxMatrix& m);

// One fresh matrix per component, holding that component's rows and the
// columns they touch. Live columns without rows go to the first matrix.
// Throws StructuralError unless the components partition the live rows.
std::vector<DlxMatrix> decompose_matrix(const DlxMatrix& m, const std::vector<std::vector<RowId>>& components);

// Shared state for one compilation: node store, memo cache, counters and the
// thread budget. The engine entry points leave the matrix (and the
// component set) as they found them unless a SolveTimeout escapes.
class Compiler {
 public:
  explicit Compiler(SolveConfig cfg, std::shared_ptr<NodeStore> store = nullptr);

  NodeId dxz(DlxMatrix& m);
  NodeId dxd(DlxMatrix& m);
  NodeId dyndxd(DlxMatrix& m, ComponentSet& cc);
  // Dispatches on the configured engine, which must not be oracle.
  NodeId run(DlxMatrix& m);

  NodeStore& store() { return *store_; }
  const std::shared_ptr<NodeStore>& store_ptr() const { return store_; }
  const SolveConfig& config() const { return cfg_; }

  std::uint64_t cache_hits() const { return hits_.load(); }
  std::uint64_t cache_misses() const { return misses_.load(); }
  // Submatrices produced by decomposition.
  std::uint64_t subs() const { return subs_.load(); }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  enum class Mode { zbdd, bfs, dynamic };

  NodeId search(DlxMatrix& m, ComponentSet* cc, Mode mode);
  NodeId solve_part(DlxMatrix& m, Mode mode);
  NodeId decompose(DlxMatrix& m, const std::vector<std::vector<RowId>>& comps, Mode mode);
  NodeId branch(DlxMatrix& m, ComponentSet* cc, Mode mode);
  bool lookup(const CacheKey& key, NodeId* out);
  void tick() const;
  bool claim_thread();

  SolveConfig cfg_;
  std::shared_ptr<NodeStore> store_;
  ShardedMap<CacheKey, NodeId, CacheKeyHash> cache_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  std::atomic<std::uint64_t> subs_{0};
  std::atomic<int> spare_threads_{0};
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

struct SolveReport {
  enum class Status { ok, timeout };

  Engine engine = Engine::dxd;
  unsigned threads = 1;
  Status status = Status::ok;
  std::shared_ptr<NodeStore> store;
  std::optional<NodeId> root;  // absent for the oracle engine and on timeout
  BigCount count = 0;
  std::size_t nodes = 0;
  std::uint64_t subs = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  double time_ms = 0;
};

SolveReport solve(const Instance& inst, const SolveConfig& cfg);

}  // namespace xcover
