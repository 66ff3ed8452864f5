#include <algorithm>
#include <deque>

#include "xcover/dynconn.hpp"

namespace xcover {

namespace {

std::string show(Edge e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; }

}  // namespace

ComponentSet ComponentSet::build(std::span<const Vertex> vertices, std::span<const Edge> edges) {
  ComponentSet cs;
  std::unordered_map<Vertex, std::vector<Vertex>> adj;
  for (Vertex v : vertices) {
    cs.forest_.add_vertex(v);
    adj[v];
  }
  for (Edge e : edges) {
    if (e.first == e.second || !adj.count(e.first) || !adj.count(e.second))
      throw ContractViolation("edge " + show(e) + " is not between two distinct vertices");
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }

  for (Vertex s : vertices) {
    if (cs.comp_of_.count(s)) continue;
    const ComponentId c = cs.new_component();
    cs.comp_of_[s] = c;
    cs.comps_[c].vertices.insert(s);
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : adj[x]) {
        if (cs.comp_of_.count(y)) continue;
        cs.comp_of_[y] = c;
        cs.comps_[c].vertices.insert(y);
        cs.forest_.link(x, y);
        queue.push_back(y);
      }
    }
  }
  for (Edge e : edges) {
    const Edge n = make_edge(e.first, e.second);
    if (!cs.forest_.has_tree_edge(n.first, n.second)) cs.comps_[cs.comp_of_[n.first]].non_tree.insert(pack(n));
  }
  return cs;
}

ComponentSet::ComponentId ComponentSet::new_component() {
  if (!free_.empty()) {
    const ComponentId c = free_.back();
    free_.pop_back();
    alive_[c] = true;
    return c;
  }
  comps_.emplace_back();
  alive_.push_back(true);
  return static_cast<ComponentId>(comps_.size() - 1);
}

void ComponentSet::drop_component(ComponentId c) {
  comps_[c] = Component{};
  alive_[c] = false;
  free_.push_back(c);
}

ComponentSet::ComponentId ComponentSet::find_cc(Vertex v) const {
  auto it = comp_of_.find(v);
  if (it == comp_of_.end()) throw ContractViolation("vertex " + std::to_string(v) + " is not live");
  return it->second;
}

std::vector<Edge> ComponentSet::non_tree_edges(ComponentId c) const {
  std::vector<Edge> out;
  for (std::uint64_t k : comps_[c].non_tree) out.push_back(unpack(k));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> ComponentSet::tree_edges(ComponentId c) {
  if (comps_[c].vertices.empty()) return {};
  return forest_.tree_edges(*comps_[c].vertices.begin());
}

std::vector<ComponentSet::ComponentId> ComponentSet::component_ids() const {
  std::vector<ComponentId> out;
  for (ComponentId c = 0; c < comps_.size(); ++c)
    if (alive_[c]) out.push_back(c);
  return out;
}

std::vector<std::vector<Vertex>> ComponentSet::partition() const {
  std::vector<std::vector<Vertex>> out;
  for (ComponentId c : component_ids()) {
    std::vector<Vertex> vs(comps_[c].vertices.begin(), comps_[c].vertices.end());
    std::sort(vs.begin(), vs.end());
    out.push_back(std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ComponentSet::delete_edge(Edge e) {
  e = make_edge(e.first, e.second);
  auto cu = comp_of_.find(e.first);
  auto cv = comp_of_.find(e.second);
  if (cu == comp_of_.end() || cv == comp_of_.end() || cu->second != cv->second)
    throw ContractViolation("deleted edge " + show(e) + " is not live");
  const ComponentId c = cu->second;
  Component& comp = comps_[c];
  if (comp.non_tree.erase(pack(e))) return;
  if (!forest_.has_tree_edge(e.first, e.second))
    throw ContractViolation("deleted edge " + show(e) + " is not live");

  forest_.cut(e.first, e.second);
  Vertex big = e.first;
  Vertex small = e.second;
  if (forest_.tree_size(small) > forest_.tree_size(big)) std::swap(small, big);
  const std::vector<Vertex> side = forest_.tree_vertices(small);
  const std::unordered_set<Vertex> in_small(side.begin(), side.end());

  // Look for a non-tree edge reconnecting the two halves, sorting the ones
  // seen so far by side in case none exists.
  std::vector<std::uint64_t> stays;
  std::vector<std::uint64_t> moves;
  for (std::uint64_t k : comp.non_tree) {
    const Edge f = unpack(k);
    const bool a = in_small.count(f.first) != 0;
    const bool b = in_small.count(f.second) != 0;
    if (a != b) {
      comp.non_tree.erase(k);
      forest_.link(f.first, f.second);
      return;
    }
    (a ? moves : stays).push_back(k);
  }

  const ComponentId n = new_component();
  Component& fresh = comps_[n];
  Component& old = comps_[c];
  for (Vertex v : side) {
    old.vertices.erase(v);
    fresh.vertices.insert(v);
    comp_of_[v] = n;
  }
  for (std::uint64_t k : moves) {
    old.non_tree.erase(k);
    fresh.non_tree.insert(k);
  }
}

void ComponentSet::dec_update(std::span<const Vertex> vd, std::span<const Edge> ed) {
  for (Edge e : ed) delete_edge(e);
  for (Vertex v : vd) {
    const ComponentId c = find_cc(v);
    if (comps_[c].vertices.size() != 1 || !comps_[c].non_tree.empty())
      throw ContractViolation("deleted vertex " + std::to_string(v) + " still has live edges");
    forest_.remove_vertex(v);
    comp_of_.erase(v);
    drop_component(c);
  }
}

void ComponentSet::insert_edge(Edge e) {
  e = make_edge(e.first, e.second);
  if (e.first == e.second) throw ContractViolation("self-loop " + show(e));
  const ComponentId cu = find_cc(e.first);
  const ComponentId cv = find_cc(e.second);
  if (cu == cv) {
    if (forest_.has_tree_edge(e.first, e.second) || !comps_[cu].non_tree.insert(pack(e)).second)
      throw ContractViolation("inserted edge " + show(e) + " is already live");
    return;
  }
  forest_.link(e.first, e.second);
  ComponentId keep = cu;
  ComponentId gone = cv;
  if (comps_[keep].vertices.size() < comps_[gone].vertices.size()) std::swap(keep, gone);
  Component& into = comps_[keep];
  for (Vertex v : comps_[gone].vertices) {
    into.vertices.insert(v);
    comp_of_[v] = keep;
  }
  into.non_tree.insert(comps_[gone].non_tree.begin(), comps_[gone].non_tree.end());
  drop_component(gone);
}

void ComponentSet::inc_update(std::span<const Vertex> vd, std::span<const Edge> ed) {
  for (Vertex v : vd) {
    if (contains(v)) throw ContractViolation("inserted vertex " + std::to_string(v) + " is already live");
    forest_.add_vertex(v);
    const ComponentId c = new_component();
    comps_[c].vertices.insert(v);
    comp_of_[v] = c;
  }
  for (Edge e : ed) insert_edge(e);
}

std::vector<std::string> ComponentSet::check() {
  std::vector<std::string> problems;
  std::size_t seen = 0;
  for (ComponentId c : component_ids()) {
    const Component& comp = comps_[c];
    if (comp.vertices.empty()) {
      problems.push_back("component " + std::to_string(c) + " is empty");
      continue;
    }
    seen += comp.vertices.size();
    const Vertex any = *comp.vertices.begin();
    for (const std::string& p : forest_.check_tour(any)) problems.push_back("component " + std::to_string(c) + ": " + p);
    const std::vector<Vertex> tv = forest_.tree_vertices(any);
    if (tv.size() != comp.vertices.size() ||
        !std::all_of(tv.begin(), tv.end(), [&](Vertex v) { return comp.vertices.count(v) != 0; }))
      problems.push_back("component " + std::to_string(c) + ": tree does not span its vertex set");
    for (Vertex v : comp.vertices) {
      auto it = comp_of_.find(v);
      if (it == comp_of_.end() || it->second != c)
        problems.push_back("vertex " + std::to_string(v) + " has a stale component index");
    }
    for (std::uint64_t k : comp.non_tree) {
      const Edge e = unpack(k);
      if (!comp.vertices.count(e.first) || !comp.vertices.count(e.second))
        problems.push_back("non-tree edge " + show(e) + " leaves its component");
      if (forest_.has_tree_edge(e.first, e.second))
        problems.push_back("edge " + show(e) + " is both tree and non-tree");
    }
  }
  if (seen != comp_of_.size()) problems.emplace_back("component vertex sets do not partition the live vertices");
  return problems;
}

}  // namespace xcover
