#pragma once

#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "xcover/concurrent.hpp"
#include "xcover/types.hpp"

namespace xcover {

struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline constexpr NodeId kBottom{0};
inline constexpr NodeId kTop{1};

enum class NodeKind : std::uint8_t { bottom, top, literal, decision, decomposable };

// One node of a zero-suppressed decision-DNNF. A ZBDD is the special case
// with no decomposable nodes.
//
//   [[bottom]]          = {}
//   [[top]]             = {{}}
//   [[literal v]]       = {{v}}
//   [[decision v p n]]  = {{v} u S : S in [[p]]} u [[n]]
//   [[decomposable cs]] = join of [[c]] over children (variable-disjoint)
struct Node {
  NodeKind kind = NodeKind::bottom;
  RowId var = kNoRow;
  NodeId pos = kBottom;
  NodeId neg = kBottom;
  std::vector<NodeId> children;  // decomposable only, ascending
};

// 256-bit Bloom signature of a node's variable set. Disjoint signatures
// prove disjoint variable sets; overlapping ones are inconclusive.
struct VarSignature {
  std::array<std::uint64_t, 4> bits{};

  static VarSignature of(RowId v);
  VarSignature& operator|=(const VarSignature& o) {
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] |= o.bits[i];
    return *this;
  }
  bool intersects(const VarSignature& o) const {
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i] & o.bits[i]) return true;
    return false;
  }
};

struct StoreOptions {
  // When signatures cannot rule out a decomposability violation, walk at
  // most this many nodes to decide exactly; beyond that the node is
  // accepted unchecked.
  std::size_t exact_check_limit = 256;
};

// Hash-consed node arena shared by ZBDDs and decision-ZDNNFs. Node creation
// is safe from multiple threads; nodes are immutable once their id is
// returned.
class NodeStore {
 public:
  explicit NodeStore(StoreOptions options = {});
  NodeStore(const NodeStore&) = delete;
  NodeStore& operator=(const NodeStore&) = delete;

  NodeId mk_literal(RowId var);
  // Returns neg when pos is bottom; (v, top, bottom) canonicalizes to the
  // literal v. Throws StructuralError if var occurs below pos or neg.
  NodeId mk_decision(RowId var, NodeId pos, NodeId neg);
  // Bottom if any child is bottom. Top children are dropped and nested
  // decomposable children are flattened; zero or one remaining children
  // collapse to top or that child. Throws StructuralError on overlapping
  // variable sets.
  NodeId mk_decomposable(std::vector<NodeId> children);

  const Node& node(NodeId n) const { return slots_[n.value].node; }
  NodeKind kind(NodeId n) const { return node(n).kind; }
  const VarSignature& signature(NodeId n) const { return slots_[n.value].signature; }
  // Total nodes ever created, terminals included.
  std::uint32_t size() const { return slots_.size(); }

  // |[[n]]|, memoized per node.
  BigCount count(NodeId n) const;
  // Number of distinct nodes reachable from n, terminals included.
  std::size_t node_count(NodeId n) const;
  // Exact sorted variable set V(n).
  std::vector<RowId> variables(NodeId n) const;

  // The first `limit` members of [[n]] in lexicographic order of their
  // sorted row sequences. Throws std::length_error if |[[n]]| exceeds
  // max_expansion, since ordering requires materializing the family.
  std::vector<std::vector<RowId>> enumerate(
      NodeId n, std::size_t limit = std::numeric_limits<std::size_t>::max(),
      std::size_t max_expansion = 1u << 22) const;

  using Labeler = std::function<std::string(RowId)>;
  void export_dot(NodeId root, std::ostream& out, const Labeler& label = {}) const;
  // Line-based dump of the nodes reachable from root: "<id> <kind> args..."
  // followed by "root <id>".
  void dump(NodeId root, std::ostream& out) const;

  // Scans every node in the store for canonicity and decomposability
  // violations. With exact set to false, variable-set checks use signatures
  // only. Returns one message per violation.
  std::vector<std::string> check_canonical(bool exact = true) const;

 private:
  struct Slot {
    Node node;
    VarSignature signature;
    mutable std::atomic<const BigCount*> count{nullptr};
    ~Slot() { delete count.load(std::memory_order_relaxed); }
  };

  struct Key {
    NodeKind kind;
    RowId var;
    std::uint32_t pos;
    std::uint32_t neg;
    std::vector<NodeId> children;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  enum class Presence { absent, present, unknown };
  // Searches for var under n, visiting at most *budget nodes.
  Presence find_var(NodeId n, RowId var, std::size_t* budget) const;
  NodeId intern(Key key);

  StoreOptions options_;
  ChunkedArena<Slot> slots_;
  ShardedMap<Key, NodeId, KeyHash> unique_;
};

// Rebuilds a dumped diagram inside store and returns its root.
NodeId load_dump(NodeStore& store, std::istream& in);

}  // namespace xcover

template <>
struct std::hash<xcover::NodeId> {
  std::size_t operator()(xcover::NodeId n) const noexcept { return xcover::mix64(n.value); }
};
