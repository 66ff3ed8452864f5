#include "xcover/diagram.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace xcover {

VarSignature VarSignature::of(RowId v) {
  VarSignature s;
  const std::uint64_t h = mix64(std::uint64_t{v} + 0x9e3779b97f4a7c15ULL);
  s.bits[(h >> 6) & 3] = std::uint64_t{1} << (h & 63);
  return s;
}

std::size_t NodeStore::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = mix64((std::uint64_t{static_cast<std::uint8_t>(k.kind)} << 32) ^ k.var);
  h = mix64(h ^ (std::uint64_t{k.pos} << 32 | k.neg));
  for (NodeId c : k.children) h = mix64(h ^ c.value);
  return static_cast<std::size_t>(h);
}

NodeStore::NodeStore(StoreOptions options) : options_(options) {
  const auto b = slots_.allocate();
  const auto t = slots_.allocate();
  slots_[b].node.kind = NodeKind::bottom;
  slots_[t].node.kind = NodeKind::top;
}

NodeId NodeStore::intern(Key key) {
  return unique_.find_or_insert(key, [&] {
    const std::uint32_t i = slots_.allocate();
    Slot& slot = slots_[i];
    slot.node.kind = key.kind;
    slot.node.var = key.var;
    slot.node.pos = NodeId{key.pos};
    slot.node.neg = NodeId{key.neg};
    slot.node.children = key.children;
    VarSignature sig;
    if (key.kind == NodeKind::literal || key.kind == NodeKind::decision) sig = VarSignature::of(key.var);
    if (key.kind == NodeKind::decision) {
      sig |= signature(slot.node.pos);
      sig |= signature(slot.node.neg);
    }
    for (NodeId c : key.children) sig |= signature(c);
    slot.signature = sig;
    return NodeId{i};
  });
}

NodeStore::Presence NodeStore::find_var(NodeId root, RowId var, std::size_t* budget) const {
  const VarSignature probe = VarSignature::of(var);
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (!signature(n).intersects(probe) || !seen.insert(n).second) continue;
    if (*budget == 0) return Presence::unknown;
    --*budget;
    const Node& x = node(n);
    if ((x.kind == NodeKind::literal || x.kind == NodeKind::decision) && x.var == var) return Presence::present;
    if (x.kind == NodeKind::decision) {
      stack.push_back(x.pos);
      stack.push_back(x.neg);
    }
    for (NodeId c : x.children) stack.push_back(c);
  }
  return Presence::absent;
}

NodeId NodeStore::mk_literal(RowId var) {
  if (var == kNoRow) throw StructuralError("literal needs a variable");
  return intern(Key{NodeKind::literal, var, 0, 0, {}});
}

NodeId NodeStore::mk_decision(RowId var, NodeId pos, NodeId neg) {
  if (pos.value >= size() || neg.value >= size()) throw StructuralError("decision child does not exist");
  if (pos == kBottom) return neg;
  if (pos == kTop && neg == kBottom) return mk_literal(var);

  Key key{NodeKind::decision, var, pos.value, neg.value, {}};
  if (auto hit = unique_.find(key)) return *hit;

  const VarSignature probe = VarSignature::of(var);
  for (NodeId child : {pos, neg}) {
    if (!signature(child).intersects(probe)) continue;
    std::size_t budget = options_.exact_check_limit;
    if (find_var(child, var, &budget) == Presence::present)
      throw StructuralError("decision variable " + std::to_string(var) + " occurs in a successor");
  }
  return intern(std::move(key));
}

NodeId NodeStore::mk_decomposable(std::vector<NodeId> children) {
  std::vector<NodeId> flat;
  flat.reserve(children.size());
  for (NodeId c : children) {
    if (c.value >= size()) throw StructuralError("decomposable child does not exist");
    switch (kind(c)) {
      case NodeKind::bottom:
        return kBottom;
      case NodeKind::top:
        break;
      case NodeKind::decomposable:
        flat.insert(flat.end(), node(c).children.begin(), node(c).children.end());
        break;
      default:
        flat.push_back(c);
    }
  }
  if (flat.empty()) return kTop;
  if (flat.size() == 1) return flat.front();
  std::sort(flat.begin(), flat.end());
  if (std::adjacent_find(flat.begin(), flat.end()) != flat.end())
    throw StructuralError("decomposable node repeats a child");

  Key key{NodeKind::decomposable, kNoRow, 0, 0, flat};
  if (auto hit = unique_.find(key)) return *hit;

  VarSignature acc;
  bool overlap = false;
  for (NodeId c : flat) {
    overlap |= acc.intersects(signature(c));
    acc |= signature(c);
  }
  if (overlap) {
    // Exact check, bounded by the configured budget.
    std::size_t budget = options_.exact_check_limit;
    std::vector<RowId> all;
    bool decided = true;
    for (NodeId c : flat) {
      std::unordered_set<NodeId> seen;
      std::vector<NodeId> stack{c};
      std::vector<RowId> vars;
      while (!stack.empty() && decided) {
        const NodeId n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (budget-- == 0) decided = false;
        const Node& x = node(n);
        if (x.kind == NodeKind::literal || x.kind == NodeKind::decision) vars.push_back(x.var);
        if (x.kind == NodeKind::decision) {
          stack.push_back(x.pos);
          stack.push_back(x.neg);
        }
        for (NodeId k : x.children) stack.push_back(k);
      }
      if (!decided) break;
      std::sort(vars.begin(), vars.end());
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      all.insert(all.end(), vars.begin(), vars.end());
    }
    if (decided) {
      std::sort(all.begin(), all.end());
      if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw StructuralError("decomposable children share variables");
    }
  }
  return intern(std::move(key));
}

BigCount NodeStore::count(NodeId root) const {
  auto value = [&](NodeId n) -> const BigCount* { return slots_[n.value].count.load(std::memory_order_acquire); };
  static const BigCount kZero = 0;
  static const BigCount kOne = 1;
  auto leaf = [&](NodeId n) -> const BigCount* {
    switch (kind(n)) {
      case NodeKind::bottom:
        return &kZero;
      case NodeKind::top:
      case NodeKind::literal:
        return &kOne;
      default:
        return value(n);
    }
  };

  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto& [n, expanded] = stack.back();
    if (leaf(n) != nullptr) {
      stack.pop_back();
      continue;
    }
    const Node& x = node(n);
    if (!expanded) {
      expanded = true;
      const NodeId id = n;
      if (x.kind == NodeKind::decision) {
        for (NodeId c : {node(id).pos, node(id).neg})
          if (leaf(c) == nullptr) stack.emplace_back(c, false);
      } else {
        for (NodeId c : node(id).children)
          if (leaf(c) == nullptr) stack.emplace_back(c, false);
      }
      continue;
    }
    BigCount v;
    if (x.kind == NodeKind::decision) {
      v = *leaf(x.pos) + *leaf(x.neg);
    } else {
      v = 1;
      for (NodeId c : x.children) v *= *leaf(c);
    }
    const BigCount* expected = nullptr;
    auto* fresh = new BigCount(std::move(v));
    if (!slots_[n.value].count.compare_exchange_strong(expected, fresh, std::memory_order_acq_rel))
      delete fresh;
    stack.pop_back();
  }
  return *leaf(root);
}

std::size_t NodeStore::node_count(NodeId root) const {
  std::unordered_set<NodeId> seen{root};
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const Node& x = node(stack.back());
    stack.pop_back();
    auto visit = [&](NodeId c) {
      if (seen.insert(c).second) stack.push_back(c);
    };
    if (x.kind == NodeKind::decision) {
      visit(x.pos);
      visit(x.neg);
    }
    for (NodeId c : x.children) visit(c);
  }
  return seen.size();
}

std::vector<RowId> NodeStore::variables(NodeId root) const {
  std::unordered_set<NodeId> seen{root};
  std::vector<NodeId> stack{root};
  std::vector<RowId> vars;
  while (!stack.empty()) {
    const Node& x = node(stack.back());
    stack.pop_back();
    if (x.kind == NodeKind::literal || x.kind == NodeKind::decision) vars.push_back(x.var);
    auto visit = [&](NodeId c) {
      if (seen.insert(c).second) stack.push_back(c);
    };
    if (x.kind == NodeKind::decision) {
      visit(x.pos);
      visit(x.neg);
    }
    for (NodeId c : x.children) visit(c);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::vector<std::vector<RowId>> NodeStore::enumerate(NodeId root, std::size_t limit,
                                                     std::size_t max_expansion) const {
  using Family = std::vector<std::vector<RowId>>;
  if (limit == 0) return {};
  if (count(root) > max_expansion) throw std::length_error("solution family too large to enumerate in order");

  std::unordered_map<NodeId, Family> memo;
  auto with = [](std::vector<RowId> s, RowId v) {
    s.insert(std::upper_bound(s.begin(), s.end(), v), v);
    return s;
  };
  auto join = [](const Family& a, const Family& b) {
    Family out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b) {
        std::vector<RowId> z;
        z.reserve(x.size() + y.size());
        std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
        out.push_back(std::move(z));
      }
    return out;
  };

  std::function<const Family&(NodeId)> expand = [&](NodeId n) -> const Family& {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const Node& x = node(n);
    Family f;
    switch (x.kind) {
      case NodeKind::bottom:
        break;
      case NodeKind::top:
        f.emplace_back();
        break;
      case NodeKind::literal:
        f.push_back({x.var});
        break;
      case NodeKind::decision: {
        for (const auto& s : expand(x.pos)) f.push_back(with(s, x.var));
        const Family& neg = expand(x.neg);
        f.insert(f.end(), neg.begin(), neg.end());
        break;
      }
      case NodeKind::decomposable: {
        f.emplace_back();
        for (NodeId c : x.children) f = join(f, expand(c));
        break;
      }
    }
    return memo.emplace(n, std::move(f)).first->second;
  };

  Family out = expand(root);
  std::sort(out.begin(), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::vector<NodeId> reachable_ascending(const NodeStore& store, NodeId root) {
  std::unordered_set<NodeId> seen{root};
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const Node& x = store.node(stack.back());
    stack.pop_back();
    auto visit = [&](NodeId c) {
      if (seen.insert(c).second) stack.push_back(c);
    };
    if (x.kind == NodeKind::decision) {
      visit(x.pos);
      visit(x.neg);
    }
    for (NodeId c : x.children) visit(c);
  }
  std::vector<NodeId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void NodeStore::export_dot(NodeId root, std::ostream& out, const Labeler& label) const {
  auto name = [&](RowId v) { return label ? label(v) : std::to_string(v); };
  out << "digraph zdnnf {\n";
  for (NodeId n : reachable_ascending(*this, root)) {
    const Node& x = node(n);
    out << "  n" << n.value;
    switch (x.kind) {
      case NodeKind::bottom:
        out << " [shape=box,label=\"⊥\"];\n";
        break;
      case NodeKind::top:
        out << " [shape=box,label=\"⊤\"];\n";
        break;
      case NodeKind::literal:
        out << " [shape=doublecircle,label=\"" << dot_escape(name(x.var)) << "\"];\n";
        break;
      case NodeKind::decision:
        out << " [shape=circle,label=\"" << dot_escape(name(x.var)) << "\"];\n";
        out << "  n" << n.value << " -> n" << x.pos.value << ";\n";
        out << "  n" << n.value << " -> n" << x.neg.value << " [style=dashed];\n";
        break;
      case NodeKind::decomposable:
        out << " [shape=triangle,label=\"⊔\"];\n";
        for (NodeId c : x.children) out << "  n" << n.value << " -> n" << c.value << ";\n";
        break;
    }
  }
  out << "}\n";
}

void NodeStore::dump(NodeId root, std::ostream& out) const {
  for (NodeId n : reachable_ascending(*this, root)) {
    const Node& x = node(n);
    out << n.value;
    switch (x.kind) {
      case NodeKind::bottom:
        out << " bot";
        break;
      case NodeKind::top:
        out << " top";
        break;
      case NodeKind::literal:
        out << " lit " << x.var;
        break;
      case NodeKind::decision:
        out << " dec " << x.var << ' ' << x.pos.value << ' ' << x.neg.value;
        break;
      case NodeKind::decomposable:
        out << " join";
        for (NodeId c : x.children) out << ' ' << c.value;
        break;
    }
    out << '\n';
  }
  out << "root " << root.value << '\n';
}

NodeId load_dump(NodeStore& store, std::istream& in) {
  std::unordered_map<std::uint32_t, NodeId> remap;
  auto resolve = [&](std::uint32_t old, std::size_t lineno) {
    auto it = remap.find(old);
    if (it == remap.end()) throw ParseError(lineno, "reference to undefined node " + std::to_string(old));
    return it->second;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first.front() == '#') continue;
    if (first == "root") {
      std::uint32_t id = 0;
      if (!(ls >> id)) throw ParseError(lineno, "malformed root line");
      return resolve(id, lineno);
    }
    std::uint32_t id = 0;
    try {
      id = static_cast<std::uint32_t>(std::stoul(first));
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected node id");
    }
    std::string kind;
    ls >> kind;
    NodeId made;
    if (kind == "bot") {
      made = kBottom;
    } else if (kind == "top") {
      made = kTop;
    } else if (kind == "lit") {
      RowId v = 0;
      if (!(ls >> v)) throw ParseError(lineno, "malformed literal");
      made = store.mk_literal(v);
    } else if (kind == "dec") {
      RowId v = 0;
      std::uint32_t p = 0, n = 0;
      if (!(ls >> v >> p >> n)) throw ParseError(lineno, "malformed decision");
      made = store.mk_decision(v, resolve(p, lineno), resolve(n, lineno));
    } else if (kind == "join") {
      std::vector<NodeId> children;
      std::uint32_t c = 0;
      while (ls >> c) children.push_back(resolve(c, lineno));
      made = store.mk_decomposable(std::move(children));
    } else {
      throw ParseError(lineno, "unknown node kind '" + kind + "'");
    }
    remap[id] = made;
  }
  throw ParseError(lineno + 1, "missing root line");
}

std::vector<std::string> NodeStore::check_canonical(bool exact) const {
  std::vector<std::string> problems;
  const std::uint32_t n = size();
  auto report = [&](std::uint32_t id, const std::string& what) {
    problems.push_back("node " + std::to_string(id) + ": " + what);
  };
  if (n < 2 || kind(kBottom) != NodeKind::bottom || kind(kTop) != NodeKind::top)
    problems.emplace_back("terminal ids are not reserved");

  std::unordered_set<Key, KeyHash> keys;
  std::vector<std::vector<RowId>> vars;
  if (exact) vars.resize(n);

  for (std::uint32_t id = 2; id < n; ++id) {
    const Node& x = slots_[id].node;
    Key key{x.kind, x.var, x.pos.value, x.neg.value, x.children};
    if (!keys.insert(key).second) report(id, "structural duplicate");

    switch (x.kind) {
      case NodeKind::bottom:
      case NodeKind::top:
        report(id, "terminal outside reserved ids");
        break;
      case NodeKind::literal:
        if (exact) vars[id] = {x.var};
        break;
      case NodeKind::decision: {
        if (x.pos == kBottom) report(id, "decision with bottom positive successor");
        if (x.pos == kTop && x.neg == kBottom) report(id, "decision equivalent to a literal");
        if (x.pos.value >= id || x.neg.value >= id) report(id, "successor created after its parent");
        if (exact) {
          const auto& p = vars[x.pos.value];
          const auto& q = vars[x.neg.value];
          if (std::binary_search(p.begin(), p.end(), x.var) || std::binary_search(q.begin(), q.end(), x.var))
            report(id, "decision variable occurs in a successor");
          std::vector<RowId> u;
          std::set_union(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(u));
          u.insert(std::upper_bound(u.begin(), u.end(), x.var), x.var);
          vars[id] = std::move(u);
        } else {
          for (NodeId c : {x.pos, x.neg}) {
            std::size_t budget = options_.exact_check_limit;
            if (find_var(c, x.var, &budget) == Presence::present)
              report(id, "decision variable occurs in a successor");
          }
        }
        break;
      }
      case NodeKind::decomposable: {
        if (x.children.size() < 2) report(id, "decomposable node with fewer than two children");
        if (!std::is_sorted(x.children.begin(), x.children.end()) ||
            std::adjacent_find(x.children.begin(), x.children.end()) != x.children.end())
          report(id, "decomposable children not strictly ascending");
        for (NodeId c : x.children) {
          if (c.value >= id) report(id, "child created after its parent");
          else if (kind(c) == NodeKind::bottom || kind(c) == NodeKind::top || kind(c) == NodeKind::decomposable)
            report(id, "decomposable node with terminal or decomposable child");
        }
        if (exact) {
          std::vector<RowId> all;
          for (NodeId c : x.children)
            if (c.value < id) all.insert(all.end(), vars[c.value].begin(), vars[c.value].end());
          std::sort(all.begin(), all.end());
          if (std::adjacent_find(all.begin(), all.end()) != all.end())
            report(id, "decomposable children share variables");
          vars[id] = std::move(all);
        }
        break;
      }
    }
  }
  return problems;
}

}  // namespace xcover
