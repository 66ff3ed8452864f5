#include <algorithm>
#include <map>

#include "xcover/dynconn.hpp"

namespace xcover {

Occ EulerTourForest::require(Vertex v) const {
  auto it = rep_.find(v);
  if (it == rep_.end()) throw ContractViolation("vertex " + std::to_string(v) + " is not in the forest");
  return it->second;
}

Occ EulerTourForest::representative(Vertex v) const { return require(v); }

void EulerTourForest::add_vertex(Vertex v) {
  if (contains(v)) throw ContractViolation("vertex " + std::to_string(v) + " already present");
  rep_.emplace(v, splay_.make(v));
}

void EulerTourForest::remove_vertex(Vertex v) {
  const Occ x = require(v);
  splay_.splay(x);
  if (splay_.size(x) != 1) throw ContractViolation("vertex " + std::to_string(v) + " still has tree edges");
  splay_.release(x);
  rep_.erase(v);
}

bool EulerTourForest::connected(Vertex u, Vertex v) { return splay_.same_tree(require(u), require(v)); }

std::size_t EulerTourForest::tree_size(Vertex u) {
  const Occ r = splay_.root(require(u));
  return (splay_.size(r) + 1) / 2;
}

void EulerTourForest::adjust_head(Vertex u) {
  const Occ x = require(u);
  if (splay_.rank(x) == 0) return;

  // s0 A' | x B, where s0 = sN is the old head r. The new walk is
  // x B A' u: the pair (r, s1) now starts at sN, and s0 goes away.
  auto [a, xb] = splay_.split_before(x);
  const Occ old_last = splay_.last(xb);
  const Occ s0 = splay_.first(a);
  auto [head, rest] = splay_.split_after(s0);
  const Vertex r = splay_.vertex(s0);
  const Vertex s1 = rest == kNil ? u : splay_.vertex(splay_.first(rest));
  handle_[key(r, s1)] = old_last;
  if (rep_[r] == s0) rep_[r] = old_last;
  (void)head;
  splay_.release(s0);

  const Occ tail = splay_.make(u);
  splay_.concatenate(splay_.concatenate(xb, rest), tail);
}

void EulerTourForest::link(Vertex u, Vertex v) {
  if (u == v || connected(u, v))
    throw ContractViolation("link(" + std::to_string(u) + "," + std::to_string(v) + ") within one tree");
  adjust_head(u);
  adjust_head(v);
  const Occ last_u = splay_.last(require(u));
  const Occ last_v = splay_.last(require(v));
  const Occ tail = splay_.make(u);
  splay_.concatenate(splay_.concatenate(last_u, last_v), tail);
  handle_[key(u, v)] = last_u;
  handle_[key(v, u)] = last_v;
}

void EulerTourForest::cut(Vertex u, Vertex v) {
  auto huv = handle_.find(key(u, v));
  auto hvu = handle_.find(key(v, u));
  if (huv == handle_.end() || hvu == handle_.end())
    throw ContractViolation("cut(" + std::to_string(u) + "," + std::to_string(v) + ") is not a tree edge");

  Occ hp = huv->second;
  Occ hc = hvu->second;
  Vertex p = u;
  if (splay_.rank(hp) > splay_.rank(hc)) {
    std::swap(hp, hc);
    p = v;
  }
  handle_.erase(huv);
  handle_.erase(hvu);

  // P hp | C .. hc | pnext R  ->  child tour C..hc, parent tour P hp R.
  auto [prefix, rest] = splay_.split_after(hp);
  auto [child, after] = splay_.split_after(hc);
  auto [pnext, tail] = splay_.split_after(splay_.first(after));
  (void)prefix;
  (void)child;
  if (tail != kNil) handle_[key(p, splay_.vertex(splay_.first(tail)))] = hp;
  if (rep_[p] == pnext) rep_[p] = hp;
  splay_.release(pnext);
  splay_.concatenate(hp, tail);
  (void)rest;
}

std::vector<Vertex> EulerTourForest::tour(Vertex u) {
  std::vector<Vertex> out;
  for (Occ x : splay_.in_order(require(u))) out.push_back(splay_.vertex(x));
  return out;
}

std::vector<Vertex> EulerTourForest::tree_vertices(Vertex u) {
  std::vector<Vertex> out = tour(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> EulerTourForest::tree_edges(Vertex u) {
  const std::vector<Vertex> t = tour(u);
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) out.push_back(make_edge(t[i], t[i + 1]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> EulerTourForest::check_tour(Vertex u) {
  std::vector<std::string> problems;
  const Occ any = require(u);
  if (!splay_.check(any)) problems.emplace_back("splay size or link mismatch");
  const std::vector<Occ> occ = splay_.in_order(any);
  std::vector<Vertex> seq;
  for (Occ x : occ) seq.push_back(splay_.vertex(x));
  const std::vector<Vertex> verts = tree_vertices(u);
  if (seq.size() != 2 * verts.size() - 1) problems.emplace_back("tour length is not 2n-1");
  if (seq.front() != seq.back()) problems.emplace_back("tour is not closed");

  std::map<std::pair<Vertex, Vertex>, int> directed;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] == seq[i + 1]) problems.emplace_back("repeated vertex in adjacent occurrences");
    ++directed[{seq[i], seq[i + 1]}];
    auto h = handle_.find(key(seq[i], seq[i + 1]));
    if (h == handle_.end() || h->second != occ[i]) problems.emplace_back("edge handle out of date");
  }
  for (const auto& [e, n] : directed) {
    if (n != 1) problems.emplace_back("directed tree edge seen more than once");
    if (!directed.count({e.second, e.first})) problems.emplace_back("tree edge traversed in one direction only");
  }
  if (directed.size() != 2 * (verts.size() - 1)) problems.emplace_back("tree edge count is not n-1");
  for (Vertex v : verts) {
    auto it = rep_.find(v);
    if (it == rep_.end() || splay_.vertex(it->second) != v || !splay_.same_tree(it->second, any))
      problems.emplace_back("bad representative for vertex " + std::to_string(v));
  }
  return problems;
}

}  // namespace xcover
