#pragma once

// Shared builders and independent oracles. The oracles here deliberately do
// not call the library code paths they are checking: ball types are computed
// by memoized dart typing on the base graph, cover existence by permutation
// voltage enumeration, normal cores by literal conjugate intersection.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gos/catalog.hpp"
#include "gos/descriptor.hpp"
#include "gos/permgroup.hpp"

namespace fix {

// ---------- catalogs ----------

inline gos::Catalog point_catalog(int colors = 2) {
  gos::Catalog c;
  c.id = "pts";
  for (int i = 0; i < colors; ++i) {
    gos::AtomType a;
    a.id = "p" + std::to_string(i);
    a.point = true;
    a.base_volume = gos::Rat(1);
    a.base_euler = gos::Rat(1);
    c.atoms[a.id] = a;
  }
  return c;
}

// genus-g surface atoms "sg<g>": chi = 2-2g, vol = 2g-2, l2 = (0, 2g-2, 0),
// one marked-point class "c" with a single end
inline gos::Catalog surface_catalog(int gmin = 2, int gmax = 5) {
  gos::Catalog c;
  c.id = "surf";
  for (int g = gmin; g <= gmax; ++g) {
    gos::AtomType a;
    a.id = "sg" + std::to_string(g);
    a.field = gos::Field::R;
    a.dim = 2;
    a.base_volume = gos::Rat(2 * g - 2);
    a.base_euler = gos::Rat(2 - 2 * g);
    a.l2_profile = std::vector<gos::Rat>{gos::Rat(0), gos::Rat(2 * g - 2), gos::Rat(0)};
    a.pegs.push_back({"c", 1});
    c.atoms[a.id] = a;
  }
  return c;
}

// ---------- point-descriptor builders ----------

// vertices (id, atom), edges as endpoint vertex-id pairs; "@"-ports assigned
// in declaration order
inline gos::Descriptor build_points(
    const std::string& id,
    const std::vector<std::pair<std::string, std::string>>& verts,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  gos::Descriptor d;
  d.id = id;
  d.catalog_ref = "pts";
  for (const auto& [vid, atom] : verts) {
    gos::VertexInstance v;
    v.id = vid;
    v.atom = atom;
    d.vertices[vid] = v;
  }
  std::map<std::string, int> next_port;
  int en = 0;
  for (const auto& [u, w] : edges) {
    gos::EdgeDecl e;
    e.id = "e" + std::to_string(en++);
    e.a = {u, gos::kPointSlot, ++next_port[u]};
    e.b = {w, gos::kPointSlot, ++next_port[w]};
    d.edges[e.id] = e;
  }
  return d;
}

inline gos::Descriptor point_graph(const std::string& id, const std::vector<int>& color,
                                   const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<std::string, std::string>> verts;
  for (std::size_t i = 0; i < color.size(); ++i)
    verts.push_back({"v" + std::to_string(i), "p" + std::to_string(color[i])});
  std::vector<std::pair<std::string, std::string>> es;
  for (auto [i, j] : edges)
    es.push_back({"v" + std::to_string(i), "v" + std::to_string(j)});
  return build_points(id, verts, es);
}

// connected random multigraph: spanning tree + extra edges under the valence cap
inline gos::Descriptor random_point_graph(std::mt19937_64& rng, const std::string& id,
                                          int n, int maxval, int colors) {
  std::vector<int> color(n), val(n, 0);
  for (int i = 0; i < n; ++i) color[i] = static_cast<int>(rng() % colors);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(rng() % i);
    edges.push_back({j, i});
    val[i]++;
    val[j]++;
  }
  int extra = static_cast<int>(rng() % (n + 1));
  for (int t = 0; t < extra; ++t) {
    int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
    int need = i == j ? 2 : 1;
    if (val[i] + (i == j ? 2 : 1) > maxval || val[j] + need > maxval) continue;
    edges.push_back({i, j});
    val[i] += i == j ? 2 : 1;
    val[j] += i == j ? 0 : 1;
  }
  return point_graph(id, color, edges);
}

// ---------- dart view of a point descriptor ----------

struct GraphView {
  std::vector<std::string> vid;
  std::map<std::string, int> idx;
  std::vector<std::string> atom;
  std::vector<int> tail, head, rev;       // per dart
  std::vector<std::vector<int>> out;      // darts by tail vertex
  std::vector<std::string> edge_of_dart;  // edge id, both directions
};

inline GraphView view_of(const gos::Descriptor& d) {
  GraphView g;
  for (const auto& [vid, v] : d.vertices) {
    g.idx[vid] = static_cast<int>(g.vid.size());
    g.vid.push_back(vid);
    g.atom.push_back(v.atom);
  }
  g.out.resize(g.vid.size());
  for (const auto& [eid, e] : d.edges) {
    int a = g.idx.at(e.a.vertex), b = g.idx.at(e.b.vertex);
    int da = static_cast<int>(g.tail.size());
    g.tail.push_back(a);
    g.head.push_back(b);
    g.tail.push_back(b);
    g.head.push_back(a);
    g.rev.push_back(da + 1);
    g.rev.push_back(da);
    g.out[a].push_back(da);
    g.out[b].push_back(da + 1);
    g.edge_of_dart.push_back(eid);
    g.edge_of_dart.push_back(eid);
  }
  return g;
}

inline bool graph_connected(const gos::Descriptor& d) {
  if (d.vertices.empty()) return true;
  GraphView g = view_of(d);
  std::vector<int> seen(g.vid.size(), 0), stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int dart : g.out[v])
      if (!seen[g.head[dart]]) {
        seen[g.head[dart]] = 1;
        ++count;
        stack.push_back(g.head[dart]);
      }
  }
  return count == static_cast<int>(g.vid.size());
}

// ---------- oracle 1: rooted-ball types by memoized dart typing ----------
//
// T_0(dart) = atom(head); T_{r+1}(dart) = atom(head) | sorted {T_r(d')} over
// darts leaving head other than the reverse dart. The radius-R vertex type is
// atom(v) | sorted {T_{R-1}(d)} over departing darts. Two connected graphs
// decorate the same tree iff some vertex types coincide at large radius.

inline std::vector<std::string> vertex_ball_types(const GraphView& g, int radius) {
  std::size_t nd = g.tail.size();
  std::vector<int> t(nd, 0), nt(nd, 0);
  std::map<std::string, int> intern;
  for (std::size_t d = 0; d < nd; ++d) {
    const std::string& key = g.atom[g.head[d]];
    auto [it, fresh] = intern.insert({key, static_cast<int>(intern.size())});
    t[d] = it->second;
  }
  for (int r = 1; r < radius; ++r) {
    std::map<std::string, int> next;
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<int> ns;
      for (int e : g.out[g.head[d]])
        if (e != g.rev[d]) ns.push_back(t[e]);
      std::sort(ns.begin(), ns.end());
      std::string key = g.atom[g.head[d]];
      for (int x : ns) key += "," + std::to_string(x);
      auto [it, fresh] = next.insert({key, static_cast<int>(next.size())});
      nt[d] = it->second;
    }
    t = nt;
  }
  std::vector<std::string> vt(g.vid.size());
  for (std::size_t v = 0; v < g.vid.size(); ++v) {
    std::vector<int> ns;
    if (radius > 0)
      for (int e : g.out[v]) ns.push_back(t[e]);
    std::sort(ns.begin(), ns.end());
    vt[v] = g.atom[v];
    for (int x : ns) vt[v] += "," + std::to_string(x);
  }
  return vt;
}

inline bool trees_isomorphic_oracle(const gos::Descriptor& a, const gos::Descriptor& b,
                                    int radius) {
  // joint dart typing so interned ids are comparable across the two graphs
  GraphView ga = view_of(a), gb = view_of(b);
  GraphView j;
  auto append = [&](const GraphView& g) {
    int voff = static_cast<int>(j.vid.size());
    int doff = static_cast<int>(j.tail.size());
    for (std::size_t v = 0; v < g.vid.size(); ++v) {
      j.vid.push_back(g.vid[v]);
      j.atom.push_back(g.atom[v]);
      j.out.push_back({});
      for (int d : g.out[v]) j.out.back().push_back(d + doff);
    }
    for (std::size_t d = 0; d < g.tail.size(); ++d) {
      j.tail.push_back(g.tail[d] + voff);
      j.head.push_back(g.head[d] + voff);
      j.rev.push_back(g.rev[d] + doff);
    }
    return voff;
  };
  append(ga);
  int boff = append(gb);
  std::vector<std::string> vt = vertex_ball_types(j, radius);
  std::set<std::string> ta(vt.begin(), vt.begin() + boff);
  for (std::size_t v = boff; v < vt.size(); ++v)
    if (ta.count(vt[v])) return true;
  return false;
}

// ---------- oracle 2: does C cover B? (locally bijective homomorphism) ----------

// phi: C-vertex -> B-vertex; psi: C-dart -> B-dart, bijective per C-vertex
// onto the darts of the image (used[v] tracks the B-darts taken at v)
inline bool covers_search(const GraphView& c, const GraphView& b, std::vector<int>& phi,
                          std::vector<int>& psi, std::vector<std::set<int>>& used) {
  int pick = -1;
  for (std::size_t d = 0; d < c.tail.size(); ++d)
    if (psi[d] < 0 && phi[c.tail[d]] >= 0) {
      pick = static_cast<int>(d);
      break;
    }
  if (pick < 0) {
    for (int x : phi)
      if (x < 0) return false;  // disconnected C never reaches here in our use
    return true;
  }
  int cv = c.tail[pick], w = phi[cv];
  for (int bd : b.out[w]) {
    if (used[cv].count(bd)) continue;
    int ch = c.head[pick], bh = b.head[bd];
    if (c.atom[ch] != b.atom[bh]) continue;
    if (phi[ch] >= 0 && phi[ch] != bh) continue;
    bool set_head = phi[ch] < 0;
    if (set_head) {
      if (b.out[bh].size() != c.out[ch].size()) continue;
      phi[ch] = bh;
    }
    if (used[ch].count(b.rev[bd])) {
      if (set_head) phi[ch] = -1;
      continue;
    }
    psi[pick] = bd;
    psi[c.rev[pick]] = b.rev[bd];
    used[cv].insert(bd);
    used[ch].insert(b.rev[bd]);
    if (covers_search(c, b, phi, psi, used)) return true;
    used[cv].erase(bd);
    used[ch].erase(b.rev[bd]);
    psi[pick] = psi[c.rev[pick]] = -1;
    if (set_head) phi[ch] = -1;
  }
  return false;
}

inline bool covers_oracle(const gos::Descriptor& cd, const gos::Descriptor& bd) {
  GraphView c = view_of(cd), b = view_of(bd);
  if (c.vid.empty()) return false;
  for (std::size_t w = 0; w < b.vid.size(); ++w) {
    if (b.atom[w] != c.atom[0] || b.out[w].size() != c.out[0].size()) continue;
    std::vector<int> phi(c.vid.size(), -1), psi(c.tail.size(), -1);
    std::vector<std::set<int>> used(c.vid.size());
    phi[0] = static_cast<int>(w);
    if (covers_search(c, b, phi, psi, used)) return true;
  }
  return false;
}

// ---------- oracle 3: exhaustive common-cover existence at fixed degrees ----------
//
// Every connected degree-n cover of a connected graph is a derived graph of a
// permutation voltage assignment that is trivial on a spanning tree; we
// enumerate those and test whether any derived graph also covers b.

inline gos::Descriptor derived_graph(const gos::Descriptor& base, int deg,
                                     const std::map<std::string, gos::Perm>& volt,
                                     const std::string& id) {
  std::vector<std::pair<std::string, std::string>> verts, edges;
  for (const auto& [vid, v] : base.vertices)
    for (int i = 0; i < deg; ++i)
      verts.push_back({vid + "-" + std::to_string(i), v.atom});
  for (const auto& [eid, e] : base.edges) {
    auto it = volt.find(eid);
    for (int i = 0; i < deg; ++i) {
      int j = it == volt.end() ? i : it->second.apply(i);
      edges.push_back({e.a.vertex + "-" + std::to_string(i),
                       e.b.vertex + "-" + std::to_string(j)});
    }
  }
  return build_points(id, verts, edges);
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::vector<gos::Perm> all_perms(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<gos::Perm> out;
  do {
    out.push_back(gos::Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// work estimate for the enumeration below; nullopt result means "over cap"
inline long long common_cover_oracle_work(const gos::Descriptor& a, long long na) {
  long long free_edges = static_cast<long long>(a.edges.size()) -
                         static_cast<long long>(a.vertices.size()) + 1;
  long long w = 1, f = factorial(static_cast<int>(na));
  for (long long i = 0; i < free_edges; ++i) {
    if (w > 4000000 / f) return 4000001;
    w *= f;
  }
  return w;
}

inline std::optional<bool> common_cover_exists_oracle(const gos::Descriptor& a,
                                                      const gos::Descriptor& b,
                                                      long long na, long long nb,
                                                      long long work_cap) {
  if (na * static_cast<long long>(a.vertices.size()) !=
      nb * static_cast<long long>(b.vertices.size()))
    return false;
  if (common_cover_oracle_work(a, na) > work_cap) return std::nullopt;
  // spanning tree edges get the identity voltage
  GraphView g = view_of(a);
  std::set<std::string> tree;
  std::vector<int> seen(g.vid.size(), 0), stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int d : g.out[v])
      if (!seen[g.head[d]]) {
        seen[g.head[d]] = 1;
        tree.insert(g.edge_of_dart[d]);
        stack.push_back(g.head[d]);
      }
  }
  std::vector<std::string> free_edges;
  for (const auto& [eid, e] : a.edges)
    if (!tree.count(eid)) free_edges.push_back(eid);
  std::vector<gos::Perm> perms = all_perms(static_cast<int>(na));
  std::vector<std::size_t> pick(free_edges.size(), 0);
  while (true) {
    std::map<std::string, gos::Perm> volt;
    for (std::size_t i = 0; i < free_edges.size(); ++i)
      volt[free_edges[i]] = perms[pick[i]];
    gos::Descriptor c = derived_graph(a, static_cast<int>(na), volt, "oracle-c");
    if (graph_connected(c) && covers_oracle(c, b)) return true;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < perms.size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) return false;
  }
}

// ---------- oracle 4: subgroups and cores by brute force ----------

inline std::vector<gos::Subgroup> all_subgroups(const gos::PermGroup& k) {
  std::set<std::vector<gos::Perm>> seen;
  std::vector<std::vector<gos::Perm>> frontier;
  std::vector<gos::Perm> triv{gos::Perm::identity(k.degree)};
  seen.insert(triv);
  frontier.push_back(triv);
  while (!frontier.empty()) {
    std::vector<std::vector<gos::Perm>> next;
    for (const auto& h : frontier)
      for (const gos::Perm& g : k.elements) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        std::vector<gos::Perm> gens = h;
        gens.push_back(g);
        auto bigger = gos::PermGroup::closure(k.degree, gens).elements;
        if (seen.insert(bigger).second) next.push_back(bigger);
      }
    frontier = std::move(next);
  }
  std::vector<gos::Subgroup> out;
  for (const auto& els : seen) out.push_back(gos::Subgroup::from_elements(els));
  return out;
}

inline gos::Subgroup core_bruteforce(const gos::PermGroup& k, const gos::Subgroup& h) {
  // literal intersection of the element sets of all conjugates g H g^-1
  std::set<gos::Perm> core(h.elements.begin(), h.elements.end());
  for (const gos::Perm& g : k.elements) {
    std::set<gos::Perm> conj;
    for (const gos::Perm& x : h.elements) conj.insert(x.conjugate_by(g));
    std::set<gos::Perm> keep;
    for (const gos::Perm& x : core)
      if (conj.count(x)) keep.insert(x);
    core = std::move(keep);
  }
  return gos::Subgroup::from_elements({core.begin(), core.end()});
}

}  // namespace fix
