#include "xcover/dynconn.hpp"

namespace xcover {

Occ SplayForest::make(Vertex v) {
  Occ x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    nodes_[x] = Node{};
  } else {
    x = static_cast<Occ>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[x].vertex = v;
  return x;
}

void SplayForest::release(Occ x) { free_.push_back(x); }

void SplayForest::rotate(Occ x) {
  const Occ p = nodes_[x].parent;
  const Occ g = nodes_[p].parent;
  if (nodes_[p].left == x) {
    const Occ b = nodes_[x].right;
    nodes_[p].left = b;
    if (b != kNil) nodes_[b].parent = p;
    nodes_[x].right = p;
  } else {
    const Occ b = nodes_[x].left;
    nodes_[p].right = b;
    if (b != kNil) nodes_[b].parent = p;
    nodes_[x].left = p;
  }
  nodes_[p].parent = x;
  nodes_[x].parent = g;
  if (g != kNil) {
    if (nodes_[g].left == p)
      nodes_[g].left = x;
    else
      nodes_[g].right = x;
  }
  pull(p);
  pull(x);
}

void SplayForest::splay(Occ x) {
  while (nodes_[x].parent != kNil) {
    const Occ p = nodes_[x].parent;
    const Occ g = nodes_[p].parent;
    if (g == kNil) {
      rotate(x);
    } else if ((nodes_[p].left == x) == (nodes_[g].left == p)) {
      rotate(p);  // zig-zig
      rotate(x);
    } else {
      rotate(x);  // zig-zag
      rotate(x);
    }
  }
}

Occ SplayForest::top(Occ x) const {
  while (nodes_[x].parent != kNil) x = nodes_[x].parent;
  return x;
}

Occ SplayForest::root(Occ x) {
  splay(x);
  return x;
}

Occ SplayForest::first(Occ x) {
  x = top(x);
  while (nodes_[x].left != kNil) x = nodes_[x].left;
  splay(x);
  return x;
}

Occ SplayForest::last(Occ x) {
  x = top(x);
  while (nodes_[x].right != kNil) x = nodes_[x].right;
  splay(x);
  return x;
}

Occ SplayForest::concatenate(Occ a, Occ b) {
  if (a == kNil) return b == kNil ? kNil : root(b);
  if (b == kNil) return root(a);
  const Occ l = last(a);
  const Occ rb = root(b);
  nodes_[l].right = rb;
  nodes_[rb].parent = l;
  pull(l);
  return l;
}

std::pair<Occ, Occ> SplayForest::split_before(Occ x) {
  splay(x);
  const Occ a = nodes_[x].left;
  if (a != kNil) {
    nodes_[a].parent = kNil;
    nodes_[x].left = kNil;
    pull(x);
  }
  return {a, x};
}

std::pair<Occ, Occ> SplayForest::split_after(Occ x) {
  splay(x);
  const Occ b = nodes_[x].right;
  if (b != kNil) {
    nodes_[b].parent = kNil;
    nodes_[x].right = kNil;
    pull(x);
  }
  return {x, b};
}

std::uint32_t SplayForest::rank(Occ x) {
  splay(x);
  return size(nodes_[x].left);
}

bool SplayForest::same_tree(Occ a, Occ b) {
  if (a == b) return true;
  splay(a);
  splay(b);
  return nodes_[a].parent != kNil;
}

std::vector<Occ> SplayForest::in_order(Occ x) const {
  std::vector<Occ> out;
  std::vector<Occ> stack;
  Occ cur = top(x);
  while (cur != kNil || !stack.empty()) {
    while (cur != kNil) {
      stack.push_back(cur);
      cur = nodes_[cur].left;
    }
    cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    cur = nodes_[cur].right;
  }
  return out;
}

bool SplayForest::check(Occ x) const {
  const Occ r = top(x);
  for (Occ n : in_order(r)) {
    const Node& v = nodes_[n];
    if (v.size != 1 + size(v.left) + size(v.right)) return false;
    if (v.left != kNil && nodes_[v.left].parent != n) return false;
    if (v.right != kNil && nodes_[v.right].parent != n) return false;
  }
  return true;
}

}  // namespace xcover
