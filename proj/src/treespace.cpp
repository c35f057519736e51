#include "gos/treespace.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gos {

namespace {

struct RefineNode {
  std::string key;         // "v:<vid>" or "s:<vid>.<slot>"
  std::string kind;        // "v" / "s"
  std::string decoration;  // atom id / peg class id
  std::vector<int> slots;  // vertex node: its slot nodes
  int host = -1;           // slot node: its vertex node
  std::vector<int> ends;   // slot node: opposite slot nodes, one per edge end
};

struct RefineState {
  std::vector<RefineNode> nodes;
  std::vector<int> color;
  int classes = 0;
  int rounds = 0;
};

/// appends the incidence structure of d (vertex nodes + slot nodes) with node
/// keys prefixed by `tag`
void add_descriptor(std::vector<RefineNode>& nodes, const Descriptor& d,
                    const Catalog& c, const std::string& tag) {
  std::map<std::string, int> index;
  auto add = [&](const std::string& key, const std::string& kind,
                 const std::string& dec) {
    index[key] = static_cast<int>(nodes.size());
    RefineNode n;
    n.key = tag + key;
    n.kind = kind;
    n.decoration = dec;
    nodes.push_back(std::move(n));
    return index[key];
  };
  auto attach = [&](const std::string& vkey, const std::string& skey) {
    nodes[index.at(vkey)].slots.push_back(index.at(skey));
    nodes[index.at(skey)].host = index.at(vkey);
  };
  for (const auto& [vid, v] : d.vertices) {
    add("v:" + vid, "v", v.atom);
    const AtomType* at = c.atom(v.atom);
    if (at && at->point) {
      add("s:" + vid + "." + kPointSlot, "s", kPointSlot);
      attach("v:" + vid, "s:" + vid + "." + kPointSlot);
    } else {
      for (const auto& [sid, cls] : v.slots) {
        add("s:" + vid + "." + sid, "s", cls);
        attach("v:" + vid, "s:" + vid + "." + sid);
      }
    }
  }
  for (const auto& [eid, e] : d.edges) {
    int sa = index.at("s:" + e.a.vertex + "." + e.a.slot);
    int sb = index.at("s:" + e.b.vertex + "." + e.b.slot);
    nodes[sa].ends.push_back(sb);
    nodes[sb].ends.push_back(sa);
  }
}

/// One refinement pass; returns true if the partition changed. Vertex nodes
/// aggregate the SET of their slot colors (a deeper vertex-space cover has
/// the same universal cover, only more marked-point orbits of each look);
/// slot nodes keep the exact multiset over their edge ends plus their host.
bool refine_round(RefineState& st) {
  using Key = std::pair<int, std::vector<int>>;
  std::vector<Key> keys(st.nodes.size());
  for (std::size_t i = 0; i < st.nodes.size(); ++i) {
    const RefineNode& n = st.nodes[i];
    std::vector<int> nb;
    if (n.kind == "v") {
      for (int j : n.slots) nb.push_back(st.color[j]);
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    } else {
      std::vector<int> ends;
      for (int j : n.ends) ends.push_back(st.color[j]);
      std::sort(ends.begin(), ends.end());
      nb.push_back(n.host >= 0 ? st.color[n.host] : -1);
      nb.insert(nb.end(), ends.begin(), ends.end());
    }
    keys[i] = {st.color[i], std::move(nb)};
  }
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (static_cast<int>(distinct.size()) == st.classes) return false;
  for (std::size_t i = 0; i < st.nodes.size(); ++i)
    st.color[i] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), keys[i]) - distinct.begin());
  st.classes = static_cast<int>(distinct.size());
  return true;
}

void init_colors(RefineState& st) {
  std::vector<std::string> init;
  for (const RefineNode& n : st.nodes) init.push_back(n.kind + "|" + n.decoration);
  std::vector<std::string> distinct = init;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  st.color.resize(st.nodes.size());
  for (std::size_t i = 0; i < st.nodes.size(); ++i)
    st.color[i] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), init[i]) - distinct.begin());
  st.classes = static_cast<int>(distinct.size());
}

RefinementSignature signature_of(const RefineState& st) {
  RefinementSignature sig;
  sig.rounds = st.rounds;
  sig.classes.resize(st.classes);
  sig.degree_matrix.assign(st.classes, std::vector<long long>(st.classes, 0));
  std::vector<bool> seen(st.classes, false);
  for (std::size_t i = 0; i < st.nodes.size(); ++i) {
    int c = st.color[i];
    sig.node_class[st.nodes[i].key] = c;
    sig.classes[c].count++;
    if (!seen[c]) {
      seen[c] = true;
      sig.classes[c].kind = st.nodes[i].kind;
      sig.classes[c].decoration = st.nodes[i].decoration;
      if (st.nodes[i].kind == "v") {
        // indicator row: which slot classes this vertex class exposes
        std::vector<int> cls;
        for (int j : st.nodes[i].slots) cls.push_back(st.color[j]);
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        for (int j : cls) sig.degree_matrix[c][j] = 1;
      } else {
        if (st.nodes[i].host >= 0) sig.degree_matrix[c][st.color[st.nodes[i].host]]++;
        for (int j : st.nodes[i].ends) sig.degree_matrix[c][st.color[j]]++;
      }
    }
  }
  return sig;
}

}  // namespace

std::string RefinementSignature::canonical() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < classes.size(); ++i)
    os << "class " << i << " " << classes[i].kind << " " << classes[i].decoration << "\n";
  for (std::size_t i = 0; i < degree_matrix.size(); ++i) {
    os << "row " << i;
    for (long long r : degree_matrix[i]) os << " " << r;
    os << "\n";
  }
  return os.str();
}

std::uint64_t RefinementSignature::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RefinementSignature::hash_hex() const {
  std::ostringstream os;
  os << std::hex << hash();
  return os.str();
}

RefinementSignature refine(const Descriptor& d, const Catalog& c) {
  RefineState st;
  add_descriptor(st.nodes, d, c, "");
  init_colors(st);
  while (refine_round(st)) ++st.rounds;
  return signature_of(st);
}

GeometryMatch same_ideal_geometry(const Descriptor& a, const Descriptor& b,
                                  const Catalog& c) {
  if (a.catalog_ref != b.catalog_ref)
    throw std::invalid_argument("catalog mismatch: " + a.catalog_ref + " vs " +
                                b.catalog_ref);
  RefineState st;
  add_descriptor(st.nodes, a, c, "a:");
  std::size_t a_nodes = st.nodes.size();
  add_descriptor(st.nodes, b, c, "b:");
  init_colors(st);

  GeometryMatch out;
  auto one_sided = [&]() -> int {
    // first class (by index) present on only one side; -1 if none
    std::vector<int> mask(st.classes, 0);
    for (std::size_t i = 0; i < st.nodes.size(); ++i)
      mask[st.color[i]] |= i < a_nodes ? 1 : 2;
    for (int cl = 0; cl < st.classes; ++cl)
      if (mask[cl] != 3) return cl;
    return -1;
  };
  for (;;) {
    int bad = one_sided();
    if (bad >= 0) {
      out.yes = false;
      out.witness_radius = st.rounds;
      for (std::size_t i = 0; i < st.nodes.size(); ++i)
        if (st.color[i] == bad) {
          out.witness_class = st.nodes[i].kind + " class of " + st.nodes[i].key;
          break;
        }
      return out;
    }
    if (!refine_round(st)) break;
    ++st.rounds;
  }
  out.yes = true;
  out.shared = refine(a, c);
  return out;
}

std::map<std::string, int> joint_classes(const Descriptor& a, const Descriptor& b,
                                         const Catalog& c) {
  RefineState st;
  add_descriptor(st.nodes, a, c, "a:");
  add_descriptor(st.nodes, b, c, "b:");
  init_colors(st);
  while (refine_round(st)) ++st.rounds;
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < st.nodes.size(); ++i) out[st.nodes[i].key] = st.color[i];
  return out;
}

DecoratedTree::DecoratedTree(const Descriptor& d, const Catalog& c,
                             std::string basepoint)
    : base(&d), cat(&c), root(std::move(basepoint)) {
  if (d.vertices.empty()) throw std::invalid_argument("empty descriptor");
  if (root.empty()) root = d.vertices.begin()->first;
  if (!d.vertex(root)) throw std::invalid_argument("unknown basepoint " + root);
}

namespace {

/// all darts at one vertex with their edges, ordered by (edge id, port)
std::vector<std::pair<PortRef, std::string>> darts_at(const Descriptor& d,
                                                      const std::string& v) {
  std::vector<std::pair<PortRef, std::string>> out;
  for (const auto& [p, eid] : d.darts())
    if (p.vertex == v) out.push_back({p, eid});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second, x.first) < std::tie(y.second, y.first);
  });
  return out;
}

/// arrival port of a step departing through dart x
PortRef arrival(const Descriptor& d, const PortRef& x, const std::string& eid) {
  const EdgeDecl& e = d.edges.at(eid);
  return d.other_end(e, x);
}

std::string peg_of(const Descriptor& d, const PortRef& p) {
  if (p.slot == kPointSlot) return kPointSlot;
  const VertexInstance* v = d.vertex(p.vertex);
  const std::string* cls = v ? v->peg_class_of(p.slot) : nullptr;
  return cls ? *cls : "?";
}

}  // namespace

std::string DecoratedTree::vertex_at(const Address& a) const {
  std::string v = root;
  PortRef entry;  // arrival dart of the previous step; vertex empty at the root
  for (const PortRef& x : a) {
    if (x.vertex != v) throw std::invalid_argument("address leaves " + v + " via " + x.str());
    if (!entry.vertex.empty() && x == entry)
      throw std::invalid_argument("address backtracks at " + x.str());
    auto ds = darts_at(*base, v);
    auto it = std::find_if(ds.begin(), ds.end(), [&](const auto& d) { return d.first == x; });
    if (it == ds.end()) throw std::invalid_argument("no dart " + x.str());
    entry = arrival(*base, x, it->second);
    v = entry.vertex;
  }
  return v;
}

Address parse_address(const std::string& s) {
  Address out;
  if (s.empty()) return out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, '/')) {
    auto d1 = part.find('.');
    auto d2 = part.rfind('.');
    if (d1 == std::string::npos || d2 == d1)
      throw std::invalid_argument("bad address step " + part);
    out.push_back({part.substr(0, d1), part.substr(d1 + 1, d2 - d1 - 1),
                   std::stoi(part.substr(d2 + 1))});
  }
  return out;
}

std::string address_str(const Address& a) {
  std::string out;
  for (const PortRef& p : a) {
    if (!out.empty()) out += "/";
    out += p.str();
  }
  return out;
}

namespace {

/// reduced address after departing through x (popping a backtracking step)
Address step_address(const Descriptor& d, const Address& addr, const PortRef& x,
                     const std::string& eid) {
  Address out = addr;
  if (!addr.empty()) {
    const PortRef& last = addr.back();
    // arrival dart of the last step is at the current vertex
    for (const auto& [p, le] : d.darts())
      if (p == last) {
        if (arrival(d, last, le) == x) {
          out.pop_back();
          return out;
        }
        break;
      }
  }
  out.push_back(x);
  return out;
}

BallNode expand(const DecoratedTree& t, const std::string& v, const PortRef* entry,
                const std::string& entry_peg, const Address& addr, int depth) {
  const Descriptor& d = *t.base;
  const VertexInstance& vi = *d.vertex(v);
  BallNode n;
  n.atom = vi.atom;
  n.degree = vi.degree;
  n.entry_peg = entry_peg;
  n.address = addr;
  if (depth == 0) return n;
  for (const auto& [x, eid] : darts_at(d, v)) {
    if (entry && x == *entry) continue;
    PortRef in = arrival(d, x, eid);
    n.children.push_back(expand(t, in.vertex, &in, peg_of(d, in),
                                step_address(d, addr, x, eid), depth - 1));
  }
  return n;
}

std::string canon_node(const BallNode& n, bool is_root) {
  std::vector<std::string> kids;
  for (const BallNode& c : n.children) kids.push_back(canon_node(c, false));
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + n.atom + "|" + (is_root ? std::string() : n.entry_peg);
  for (const std::string& k : kids) out += k;
  return out + ")";
}

}  // namespace

BallView ball(const DecoratedTree& t, const Address& center, int radius) {
  if (radius < 0) throw std::invalid_argument("negative radius");
  std::string v = t.vertex_at(center);
  const PortRef* entry = nullptr;
  PortRef entry_store;
  if (!center.empty()) {
    // arrival dart of the last step, to exclude nothing: the ball at a node
    // spreads in every direction, so the center has no excluded dart
    (void)entry_store;
  }
  BallView b;
  b.radius = radius;
  b.root = expand(t, v, entry, "", center, radius);
  return b;
}

std::string BallView::canonical() const { return canon_node(root, true); }

bool ball_isomorphic(const BallView& x, const BallView& y) {
  return x.radius == y.radius && x.canonical() == y.canonical();
}

namespace {

bool match_nodes(const BallNode& x, const BallNode& y, bool is_root,
                 const std::map<std::string, std::string>& constraint) {
  if (x.atom != y.atom) return false;
  if (!is_root && x.entry_peg != y.entry_peg) return false;
  auto ct = constraint.find(address_str(x.address));
  if (ct != constraint.end() && ct->second != address_str(y.address)) return false;
  if (x.children.size() != y.children.size()) return false;
  // backtracking perfect matching of children
  std::vector<int> assigned(y.children.size(), -1);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == x.children.size()) return true;
    for (std::size_t j = 0; j < y.children.size(); ++j) {
      if (assigned[j] >= 0) continue;
      if (!match_nodes(x.children[i], y.children[j], false, constraint)) continue;
      assigned[j] = static_cast<int>(i);
      if (go(i + 1)) return true;
      assigned[j] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool locally_realizable(const DecoratedTree& ta, const DecoratedTree& tb,
                        const PartialTreeMap& f, int radius) {
  std::map<std::string, std::string> constraint;
  for (const auto& [x, y] : f.pairs) constraint[address_str(x)] = address_str(y);
  for (const auto& [x, y] : f.pairs) {
    BallView bx = ball(ta, x, radius);
    BallView by = ball(tb, y, radius);
    if (!match_nodes(bx.root, by.root, true, constraint)) return false;
  }
  return true;
}

}  // namespace gos
