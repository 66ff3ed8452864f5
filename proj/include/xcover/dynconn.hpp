#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "xcover/types.hpp"

namespace xcover {

using Vertex = std::uint32_t;
// Undirected edge, stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Handle into a SplayForest; kNil is the empty tree.
using Occ = std::int32_t;
inline constexpr Occ kNil = -1;

// Arena of splay trees keyed by in-order position. Each node carries one
// vertex occurrence; a tree's in-order sequence is an Euler tour.
class SplayForest {
 public:
  Occ make(Vertex v);
  void release(Occ x);

  Vertex vertex(Occ x) const { return nodes_[x].vertex; }
  Occ left(Occ x) const { return nodes_[x].left; }
  Occ right(Occ x) const { return nodes_[x].right; }
  Occ parent(Occ x) const { return nodes_[x].parent; }
  std::uint32_t size(Occ x) const { return x == kNil ? 0 : nodes_[x].size; }

  // Moves x into its parent's place. x must have a parent.
  void rotate(Occ x);
  // Rotates x up to the root of its tree.
  void splay(Occ x);

  // Splays the trees of a and b (either may be kNil) and joins them so that
  // a's sequence precedes b's. Returns the new root.
  Occ concatenate(Occ a, Occ b);
  // Detaches everything before x. Returns (prefix root, x); x is the root of
  // the suffix.
  std::pair<Occ, Occ> split_before(Occ x);
  // Detaches everything after x. Returns (x, suffix root).
  std::pair<Occ, Occ> split_after(Occ x);

  // Position of x in its sequence; splays x.
  std::uint32_t rank(Occ x);
  bool same_tree(Occ a, Occ b);
  // Root, first and last node of the tree containing x; these splay.
  Occ root(Occ x);
  Occ first(Occ x);
  Occ last(Occ x);

  // In-order nodes of the tree containing x. Does not restructure.
  std::vector<Occ> in_order(Occ x) const;
  // True if every size field in the tree containing x matches a recount and
  // parent/child links agree.
  bool check(Occ x) const;

  std::size_t live_nodes() const { return nodes_.size() - free_.size(); }

 private:
  struct Node {
    Vertex vertex = 0;
    Occ left = kNil;
    Occ right = kNil;
    Occ parent = kNil;
    std::uint32_t size = 1;
  };
  void pull(Occ x) { nodes_[x].size = 1 + size(nodes_[x].left) + size(nodes_[x].right); }
  Occ top(Occ x) const;

  std::vector<Node> nodes_;
  std::vector<Occ> free_;
};

// Spanning forest kept as Euler tours. A tree on n vertices is a closed walk
// of 2n-1 occurrences starting and ending at its head vertex; a lone vertex
// is a single occurrence.
class EulerTourForest {
 public:
  // Adds v as a singleton tree.
  void add_vertex(Vertex v);
  // Removes v, which must be a singleton tree.
  void remove_vertex(Vertex v);
  bool contains(Vertex v) const { return rep_.count(v) != 0; }

  bool connected(Vertex u, Vertex v);
  bool has_tree_edge(Vertex u, Vertex v) const { return handle_.count(key(u, v)) != 0; }
  // Number of vertices in u's tree.
  std::size_t tree_size(Vertex u);

  // Reroots u's tour so it starts (and ends) at u.
  void adjust_head(Vertex u);
  // Joins the trees of u and v with edge (u,v). Throws ContractViolation if
  // they are already connected.
  void link(Vertex u, Vertex v);
  // Removes tree edge (u,v). Throws ContractViolation if it is not one.
  void cut(Vertex u, Vertex v);

  // Vertex sequence of u's tour.
  std::vector<Vertex> tour(Vertex u);
  // Distinct vertices of u's tree.
  std::vector<Vertex> tree_vertices(Vertex u);
  // Tree edges recovered from adjacent occurrences, sorted.
  std::vector<Edge> tree_edges(Vertex u);

  Occ representative(Vertex v) const;
  SplayForest& splay_forest() { return splay_; }

  // Empty if u's tour is well formed: closed walk of the right length, every
  // tree edge seen once per direction, edge handles pointing at the right
  // occurrences, sizes consistent.
  std::vector<std::string> check_tour(Vertex u);

 private:
  static std::uint64_t key(Vertex from, Vertex to) { return std::uint64_t{from} << 32 | to; }
  Occ require(Vertex v) const;

  SplayForest splay_;
  std::unordered_map<Vertex, Occ> rep_;
  // (x,y) -> the x-occurrence immediately followed by a y-occurrence.
  std::unordered_map<std::uint64_t, Occ> handle_;
};

// Connected components of a dynamic simple graph: per component a spanning
// tree and the set of non-tree edges. Supports batched vertex/edge deletion
// with replacement-edge search, and batched insertion.
class ComponentSet {
 public:
  using ComponentId = std::uint32_t;

  ComponentSet() = default;
  // BFS spanning forest of the given graph. Edge endpoints must be among the
  // vertices.
  static ComponentSet build(std::span<const Vertex> vertices, std::span<const Edge> edges);

  bool contains(Vertex v) const { return comp_of_.count(v) != 0; }
  // Throws ContractViolation for an unknown vertex.
  ComponentId find_cc(Vertex v) const;
  const std::unordered_set<Vertex>& vertices(ComponentId c) const { return comps_[c].vertices; }
  std::vector<Edge> non_tree_edges(ComponentId c) const;
  std::vector<Edge> tree_edges(ComponentId c);
  std::size_t num_components() const { return comps_.size() - free_.size(); }
  std::size_t num_vertices() const { return comp_of_.size(); }
  std::vector<ComponentId> component_ids() const;

  // Vertex sets, each sorted, ordered by smallest vertex.
  std::vector<std::vector<Vertex>> partition() const;

  // Removes edges ed and then vertices vd. Every live edge at a vertex of vd
  // must be in ed.
  void dec_update(std::span<const Vertex> vd, std::span<const Edge> ed);
  // Adds vertices vd (which must be new) and then edges ed.
  void inc_update(std::span<const Vertex> vd, std::span<const Edge> ed);

  // Empty if all structural invariants hold.
  std::vector<std::string> check();

 private:
  struct Component {
    std::unordered_set<Vertex> vertices;
    std::unordered_set<std::uint64_t> non_tree;
  };
  static std::uint64_t pack(Edge e) { return std::uint64_t{e.first} << 32 | e.second; }
  static Edge unpack(std::uint64_t k) { return {static_cast<Vertex>(k >> 32), static_cast<Vertex>(k)}; }

  ComponentId new_component();
  void drop_component(ComponentId c);
  void delete_edge(Edge e);
  void insert_edge(Edge e);

  EulerTourForest forest_;
  std::vector<Component> comps_;
  std::vector<bool> alive_;
  std::vector<ComponentId> free_;
  std::unordered_map<Vertex, ComponentId> comp_of_;
};

}  // namespace xcover
