#include "gos/cover.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace gos {

namespace {

bool is_point_vertex(const Descriptor& d, const Catalog& cat, const std::string& vid) {
  const VertexInstance* v = d.vertex(vid);
  const AtomType* at = v ? cat.atom(v->atom) : nullptr;
  return at && at->point;
}

}  // namespace

ValidationReport verify_cover(const CoveringMap& m, const Descriptor& src,
                              const Descriptor& tgt, const Catalog& cat) {
  ValidationReport rep;
  if (m.total_degree < 1) rep.add("degree", "total degree must be positive");

  // vertex-level checks
  std::map<std::string, long long> fiber_sum;
  for (const auto& [wid, w] : src.vertices) {
    auto vm = m.vertex_map.find(wid);
    if (vm == m.vertex_map.end()) {
      rep.add("vertex map", "no image for " + wid);
      continue;
    }
    const VertexInstance* v = tgt.vertex(vm->second);
    if (!v) {
      rep.add("vertex map", wid + " maps to unknown vertex " + vm->second);
      continue;
    }
    auto ld = m.local_degree.find(wid);
    long long lambda = ld == m.local_degree.end() ? 0 : ld->second;
    if (lambda < 1) rep.add("local degree", wid + ": missing or non-positive");
    if (w.atom != v->atom) rep.add("atom mismatch", wid + " over " + vm->second);
    if (lambda >= 1 && w.degree != lambda * v->degree)
      rep.add("vertex degree", wid + ": degree " + std::to_string(w.degree) + " != " +
                                   std::to_string(lambda) + " * " + std::to_string(v->degree));
    fiber_sum[vm->second] += lambda;
  }
  for (const auto& [vid, v] : tgt.vertices) {
    long long s = fiber_sum.count(vid) ? fiber_sum[vid] : 0;
    if (s != m.total_degree)
      rep.add("fiber degree sum", vid + ": " + std::to_string(s) + " != N=" +
                                      std::to_string(m.total_degree));
  }

  // slot-level checks: lambda-to-1 per peg class, onto the target's slots
  std::map<std::pair<std::string, std::string>, long long> slot_fiber;
  for (const auto& [wid, w] : src.vertices) {
    if (is_point_vertex(src, cat, wid)) continue;
    auto vm = m.vertex_map.find(wid);
    if (vm == m.vertex_map.end()) continue;
    const VertexInstance* v = tgt.vertex(vm->second);
    if (!v) continue;
    long long lambda = m.local_degree.count(wid) ? m.local_degree.at(wid) : 0;
    std::map<std::string, long long> per_tgt_slot;
    for (const auto& [sid, cls] : w.slots) {
      auto sm = m.slot_map.find({wid, sid});
      if (sm == m.slot_map.end()) {
        rep.add("slot map", "no image for " + wid + "." + sid);
        continue;
      }
      if (sm->second.first != vm->second) {
        rep.add("slot map", wid + "." + sid + " maps outside image vertex");
        continue;
      }
      const std::string* tcls = v->peg_class_of(sm->second.second);
      if (!tcls) {
        rep.add("slot map", wid + "." + sid + " maps to unknown slot");
        continue;
      }
      if (*tcls != cls) rep.add("slot class", wid + "." + sid + " changes peg class");
      per_tgt_slot[sm->second.second]++;
    }
    for (const auto& [sid, cls] : v->slots) {
      long long n = per_tgt_slot.count(sid) ? per_tgt_slot[sid] : 0;
      if (n != lambda)
        rep.add("slot fiber", wid + " over " + vm->second + "." + sid + ": " +
                                  std::to_string(n) + " != local degree " +
                                  std::to_string(lambda));
    }
  }

  // port-level checks
  auto tgt_darts = tgt.darts();
  std::set<PortRef> tgt_dart_set;
  std::map<PortRef, std::string> tgt_edge_of;
  for (const auto& [p, eid] : tgt_darts) {
    tgt_dart_set.insert(p);
    tgt_edge_of[p] = eid;
  }
  std::map<PortRef, long long> port_fiber;
  std::map<std::pair<std::string, std::string>, std::set<int>> slot_ports_hit;
  for (const auto& [p, eid] : src.darts()) {
    auto pm = m.port_map.find(p);
    if (pm == m.port_map.end()) {
      rep.add("port map", "no image for " + p.str());
      continue;
    }
    const PortRef& q = pm->second;
    if (!tgt_dart_set.count(q)) {
      rep.add("port map", p.str() + " maps to non-dart " + q.str());
      continue;
    }
    auto vm = m.vertex_map.find(p.vertex);
    if (vm == m.vertex_map.end() || vm->second != q.vertex)
      rep.add("port map", p.str() + " image not over the image vertex");
    if (p.slot != kPointSlot) {
      auto sm = m.slot_map.find({p.vertex, p.slot});
      if (sm != m.slot_map.end() && sm->second.second != q.slot)
        rep.add("port map", p.str() + " image not in the image slot");
      if (!slot_ports_hit[{p.vertex, p.slot}].insert(q.port).second)
        rep.add("port bijection", p.vertex + "." + p.slot + " hits port " +
                                      std::to_string(q.port) + " twice");
    }
    port_fiber[q]++;
  }
  for (const auto& [p, eid] : tgt_darts) {
    long long n = port_fiber.count(p) ? port_fiber[p] : 0;
    if (n != m.total_degree)
      rep.add("port fiber", p.str() + ": " + std::to_string(n) + " lifts != N");
  }

  // edge-level checks
  std::map<std::string, long long> edge_fiber;
  for (const auto& [eid, e] : src.edges) {
    auto em = m.edge_map.find(eid);
    if (em == m.edge_map.end()) {
      rep.add("edge map", "no image for " + eid);
      continue;
    }
    auto te = tgt.edges.find(em->second);
    if (te == tgt.edges.end()) {
      rep.add("edge map", eid + " maps to unknown edge " + em->second);
      continue;
    }
    edge_fiber[em->second]++;
    auto pa = m.port_map.find(e.a);
    auto pb = m.port_map.find(e.b);
    if (pa != m.port_map.end() && pb != m.port_map.end()) {
      bool straight = pa->second == te->second.a && pb->second == te->second.b;
      bool flipped = pa->second == te->second.b && pb->second == te->second.a;
      if (!straight && !flipped)
        rep.add("incidence", eid + " ends do not project onto " + em->second);
    }
  }
  for (const auto& [eid, e] : tgt.edges) {
    long long n = edge_fiber.count(eid) ? edge_fiber[eid] : 0;
    if (n != m.total_degree)
      rep.add("edge fiber", eid + ": " + std::to_string(n) + " lifts != N");
  }
  return rep;
}

CoveringMap identity_cover(const Descriptor& d, const std::string& id) {
  CoveringMap m;
  m.id = id;
  m.source = m.target = d.id;
  m.total_degree = 1;
  for (const auto& [vid, v] : d.vertices) {
    m.vertex_map[vid] = vid;
    m.local_degree[vid] = 1;
    for (const auto& [sid, cls] : v.slots) m.slot_map[{vid, sid}] = {vid, sid};
  }
  for (const auto& [eid, e] : d.edges) {
    m.edge_map[eid] = eid;
    m.port_map[e.a] = e.a;
    m.port_map[e.b] = e.b;
  }
  return m;
}

CoveringMap compose(const CoveringMap& p, const CoveringMap& q, const Descriptor& a) {
  if (p.target != q.source)
    throw std::invalid_argument("compose: " + p.target + " != " + q.source);
  CoveringMap m;
  m.id = p.id + "-" + q.id;
  m.source = p.source;
  m.target = q.target;
  m.total_degree = p.total_degree * q.total_degree;
  for (const auto& [w, v] : p.vertex_map) {
    m.vertex_map[w] = q.vertex_map.at(v);
    m.local_degree[w] = p.local_degree.at(w) * q.local_degree.at(v);
  }
  for (const auto& [s, t] : p.slot_map) {
    auto qt = q.slot_map.find(t);
    if (qt != q.slot_map.end()) m.slot_map[s] = qt->second;
  }
  for (const auto& [e, f] : p.edge_map) m.edge_map[e] = q.edge_map.at(f);
  for (const auto& [x, y] : p.port_map) m.port_map[x] = q.port_map.at(y);
  (void)a;
  return m;
}

std::vector<FiberComponent> fiber_product(const CoveringMap& p, const Descriptor& a,
                                          const CoveringMap& q, const Descriptor& b,
                                          const Descriptor& d, const Catalog& cat) {
  for (const auto& [w, l] : p.local_degree)
    if (l != 1) throw std::invalid_argument("fiber_product requires local degrees 1");
  for (const auto& [w, l] : q.local_degree)
    if (l != 1) throw std::invalid_argument("fiber_product requires local degrees 1");

  auto pair_id = [](const std::string& x, const std::string& y) { return x + "-" + y; };

  // inverse slot lookup: (a-vertex, tgt slot) -> a-slot (unique since lambda = 1)
  auto slot_over = [](const CoveringMap& m, const std::string& w,
                      const std::string& tgt_slot) -> std::string {
    for (const auto& [s, t] : m.slot_map)
      if (s.first == w && t.second == tgt_slot) return s.second;
    throw std::runtime_error("missing slot lift");
  };
  // inverse dart lookup: the unique dart of w over base dart x
  auto dart_over = [](const CoveringMap& m, const Descriptor& cov, const std::string& w,
                      const PortRef& x) -> PortRef {
    for (const auto& [pr, tr] : m.port_map)
      if (pr.vertex == w && tr == x) return pr;
    throw std::runtime_error("missing dart lift over " + x.str());
  };

  Descriptor prod;
  prod.id = d.id + "_fp";
  prod.catalog_ref = d.catalog_ref;
  CoveringMap to_a, to_b;
  std::map<std::string, std::pair<std::string, std::string>> origin;  // pair vertex -> (wa, wb)

  for (const auto& [wa, va] : a.vertices) {
    for (const auto& [wb, vb] : b.vertices) {
      if (p.vertex_map.at(wa) != q.vertex_map.at(wb)) continue;
      const std::string base_v = p.vertex_map.at(wa);
      const VertexInstance* v = d.vertex(base_v);
      VertexInstance w;
      w.id = pair_id(wa, wb);
      w.atom = v->atom;
      w.degree = v->degree;
      to_a.vertex_map[w.id] = wa;
      to_a.local_degree[w.id] = 1;
      to_b.vertex_map[w.id] = wb;
      to_b.local_degree[w.id] = 1;
      for (const auto& [sid, cls] : v->slots) {
        std::string sa = slot_over(p, wa, sid);
        std::string sb = slot_over(q, wb, sid);
        std::string ps = pair_id(sa, sb);
        w.slots.push_back({ps, cls});
        to_a.slot_map[{w.id, ps}] = {wa, sa};
        to_b.slot_map[{w.id, ps}] = {wb, sb};
      }
      std::sort(w.slots.begin(), w.slots.end());
      origin[w.id] = {wa, wb};
      prod.vertices[w.id] = std::move(w);
    }
  }

  // one product edge per pair of lifts over each base edge
  for (const auto& [eid, e] : d.edges) {
    std::vector<std::string> lifts_a, lifts_b;
    for (const auto& [f, g] : p.edge_map)
      if (g == eid) lifts_a.push_back(f);
    for (const auto& [f, g] : q.edge_map)
      if (g == eid) lifts_b.push_back(f);
    auto lift_port = [&](const PortRef& base, const std::string& ea, const std::string& eb) {
      const EdgeDecl& da = a.edges.at(ea);
      const EdgeDecl& db = b.edges.at(eb);
      PortRef xa = p.port_map.at(da.a) == base ? da.a : da.b;
      PortRef xb = q.port_map.at(db.a) == base ? db.a : db.b;
      std::string wv = pair_id(xa.vertex, xb.vertex);
      std::string ws = base.slot == kPointSlot
                           ? kPointSlot
                           : pair_id(xa.slot, xb.slot);
      PortRef out{wv, ws, base.port};
      to_a.port_map[out] = xa;
      to_b.port_map[out] = xb;
      return out;
    };
    for (const auto& ea : lifts_a)
      for (const auto& eb : lifts_b) {
        EdgeDecl pe;
        pe.id = pair_id(ea, eb);
        pe.a = lift_port(e.a, ea, eb);
        pe.b = lift_port(e.b, ea, eb);
        to_a.edge_map[pe.id] = ea;
        to_b.edge_map[pe.id] = eb;
        prod.edges[pe.id] = std::move(pe);
      }
  }

  // split into connected components
  std::map<std::string, int> comp;
  int ncomp = 0;
  for (const auto& [vid, v] : prod.vertices) {
    if (comp.count(vid)) continue;
    std::deque<std::string> bfs{vid};
    comp[vid] = ncomp;
    while (!bfs.empty()) {
      std::string u = bfs.front();
      bfs.pop_front();
      for (const auto& [eid, e] : prod.edges) {
        for (const auto& [from, to] : {std::pair{e.a.vertex, e.b.vertex},
                                       std::pair{e.b.vertex, e.a.vertex}})
          if (from == u && !comp.count(to)) {
            comp[to] = ncomp;
            bfs.push_back(to);
          }
      }
    }
    ++ncomp;
  }

  std::vector<FiberComponent> out;
  for (int c = 0; c < ncomp; ++c) {
    FiberComponent fc;
    fc.total.id = prod.id + std::to_string(c);
    fc.total.catalog_ref = prod.catalog_ref;
    fc.to_a.id = fc.total.id + "_pa";
    fc.to_a.source = fc.total.id;
    fc.to_a.target = a.id;
    fc.to_b.id = fc.total.id + "_pb";
    fc.to_b.source = fc.total.id;
    fc.to_b.target = b.id;
    for (const auto& [vid, v] : prod.vertices) {
      if (comp[vid] != c) continue;
      fc.total.vertices[vid] = v;
      fc.to_a.vertex_map[vid] = to_a.vertex_map[vid];
      fc.to_a.local_degree[vid] = 1;
      fc.to_b.vertex_map[vid] = to_b.vertex_map[vid];
      fc.to_b.local_degree[vid] = 1;
      for (const auto& [sid, cls] : v.slots) {
        fc.to_a.slot_map[{vid, sid}] = to_a.slot_map[{vid, sid}];
        fc.to_b.slot_map[{vid, sid}] = to_b.slot_map[{vid, sid}];
      }
    }
    for (const auto& [eid, e] : prod.edges) {
      if (comp[e.a.vertex] != c) continue;
      fc.total.edges[eid] = e;
      fc.to_a.edge_map[eid] = to_a.edge_map[eid];
      fc.to_b.edge_map[eid] = to_b.edge_map[eid];
      for (const PortRef* pr : {&e.a, &e.b}) {
        fc.to_a.port_map[*pr] = to_a.port_map[*pr];
        fc.to_b.port_map[*pr] = to_b.port_map[*pr];
      }
    }
    // degree over A = fiber size over the first a-vertex; likewise over B
    std::map<std::string, long long> fib_a, fib_b;
    for (const auto& [vid, wa] : fc.to_a.vertex_map) fib_a[wa]++;
    for (const auto& [vid, wb] : fc.to_b.vertex_map) fib_b[wb]++;
    fc.to_a.total_degree = fib_a.empty() ? 0 : fib_a.begin()->second;
    fc.to_b.total_degree = fib_b.empty() ? 0 : fib_b.begin()->second;
    if (!fc.total.vertices.empty()) out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end(), [](const FiberComponent& x, const FiberComponent& y) {
    return x.total.vertices.begin()->first < y.total.vertices.begin()->first;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    // stable component naming after canonical ordering
    std::string nid = d.id + "_fp" + std::to_string(i);
    out[i].to_a.source = out[i].to_b.source = nid;
    out[i].to_a.id = nid + "_pa";
    out[i].to_b.id = nid + "_pb";
    out[i].total.id = nid;
  }
  (void)cat;
  return out;
}

DerivedCover graph_regular_cover(const Descriptor& d, const Catalog& cat,
                                 const VoltageAssignment& va) {
  const int n = va.degree;
  if (n < 1) throw std::invalid_argument("voltage degree must be positive");
  for (const auto& [eid, s] : va.voltages) {
    if (!d.edges.count(eid)) throw std::invalid_argument("voltage on unknown edge " + eid);
    if (s.degree() != n) throw std::invalid_argument("voltage degree mismatch on " + eid);
  }
  auto voltage = [&](const std::string& eid) {
    auto it = va.voltages.find(eid);
    return it == va.voltages.end() ? Perm::identity(n) : it->second;
  };
  auto lift_vertex = [](const std::string& v, int i) {
    return v + "-" + std::to_string(i + 1);
  };

  // full derived graph, then restrict to the basepoint component
  Descriptor total;
  total.id = d.id + "_dc";
  total.catalog_ref = d.catalog_ref;
  CoveringMap m;
  m.id = total.id + "_p";
  m.source = total.id;
  m.target = d.id;

  std::set<std::pair<std::string, int>> keep;
  std::deque<std::pair<std::string, int>> bfs;
  std::string root = d.vertices.begin()->first;
  keep.insert({root, 0});
  bfs.push_back({root, 0});
  while (!bfs.empty()) {
    auto [v, i] = bfs.front();
    bfs.pop_front();
    for (const auto& [eid, e] : d.edges) {
      Perm s = voltage(eid);
      if (e.a.vertex == v) {
        auto nxt = std::pair{e.b.vertex, s.apply(i)};
        if (keep.insert(nxt).second) bfs.push_back(nxt);
      }
      if (e.b.vertex == v) {
        auto nxt = std::pair{e.a.vertex, s.inverse().apply(i)};
        if (keep.insert(nxt).second) bfs.push_back(nxt);
      }
    }
  }
  long long fiber = 0;
  for (const auto& [v, i] : keep)
    if (v == root) ++fiber;
  m.total_degree = fiber;

  for (const auto& [v, i] : keep) {
    const VertexInstance& base = d.vertices.at(v);
    VertexInstance w = base;
    w.id = lift_vertex(v, i);
    m.vertex_map[w.id] = v;
    m.local_degree[w.id] = 1;
    for (const auto& [sid, cls] : base.slots) m.slot_map[{w.id, sid}] = {v, sid};
    total.vertices[w.id] = std::move(w);
  }
  for (const auto& [eid, e] : d.edges) {
    Perm s = voltage(eid);
    for (int i = 0; i < n; ++i) {
      if (!keep.count({e.a.vertex, i})) continue;
      EdgeDecl le;
      le.id = eid + "-" + std::to_string(i + 1);
      le.a = PortRef{lift_vertex(e.a.vertex, i), e.a.slot, e.a.port};
      le.b = PortRef{lift_vertex(e.b.vertex, s.apply(i)), e.b.slot, e.b.port};
      m.edge_map[le.id] = eid;
      m.port_map[le.a] = e.a;
      m.port_map[le.b] = e.b;
      total.edges[le.id] = std::move(le);
    }
  }

  DerivedCover out;
  // regular iff the monodromy group acts regularly on the basepoint fiber
  std::vector<Perm> gens;
  for (const auto& [eid, s] : va.voltages) gens.push_back(s);
  {
    std::set<Perm> closure{Perm::identity(n)};
    std::deque<Perm> fr(closure.begin(), closure.end());
    while (!fr.empty()) {
      Perm g = fr.front();
      fr.pop_front();
      for (const Perm& s : gens)
        for (const Perm& nx : {s * g, s.inverse() * g})
          if (closure.insert(nx).second) fr.push_back(nx);
    }
    std::set<int> orbit;
    for (const Perm& g : closure) orbit.insert(g.apply(0));
    out.regular = static_cast<long long>(closure.size()) == fiber &&
                  static_cast<long long>(orbit.size()) == fiber;
  }
  out.cover.total = std::move(total);
  out.cover.map = std::move(m);
  (void)cat;
  return out;
}

DeckAction deck_action(const BuiltCover& c, const Descriptor& tgt, const Catalog& cat) {
  for (const auto& [w, l] : c.map.local_degree)
    if (l != 1) throw std::invalid_argument("deck_action requires local degrees 1");
  (void)cat;
  const Descriptor& s = c.total;

  // fibers
  std::map<std::string, std::vector<std::string>> fiber;
  for (const auto& [wid, v] : s.vertices) fiber[c.map.vertex_map.at(wid)].push_back(wid);

  // dart projection and inverse per vertex
  std::map<PortRef, std::pair<PortRef, std::string>> dart_info;  // dart -> (proj, edge)
  std::map<std::string, std::map<PortRef, PortRef>> lift_at;     // vertex -> proj -> dart
  for (const auto& [p, eid] : s.darts()) {
    dart_info[p] = {c.map.port_map.at(p), eid};
    lift_at[p.vertex][c.map.port_map.at(p)] = p;
  }
  std::map<PortRef, PortRef> mate;  // dart -> opposite dart
  for (const auto& [eid, e] : s.edges) {
    mate[e.a] = e.b;
    mate[e.b] = e.a;
  }

  std::vector<std::string> verts;
  for (const auto& [wid, v] : s.vertices) verts.push_back(wid);

  std::vector<std::map<std::string, std::string>> found;
  std::map<std::string, std::string> phi;
  auto consistent = [&](const std::string& w) {
    // every matched edge at w must map to an edge
    for (const auto& [p, info] : dart_info) {
      if (p.vertex != w) continue;
      const PortRef& pm = mate.at(p);
      if (!phi.count(pm.vertex)) continue;
      PortRef ip = lift_at.at(phi.at(p.vertex)).at(info.first);
      PortRef im = lift_at.at(phi.at(pm.vertex)).at(dart_info.at(pm).first);
      if (mate.at(ip) != im) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == verts.size()) {
      found.push_back(phi);
      return;
    }
    const std::string& w = verts[i];
    for (const std::string& img : fiber.at(c.map.vertex_map.at(w))) {
      bool used = false;
      for (const auto& [x, y] : phi)
        if (y == img) used = true;
      if (used) continue;
      phi[w] = img;
      if (consistent(w)) search(i + 1);
      phi.erase(w);
    }
  };
  search(0);

  DeckAction da;
  da.vertex_perms = std::move(found);
  // transitive on each edge fiber?
  std::map<std::string, std::vector<std::string>> edge_fiber;
  for (const auto& [eid, base] : c.map.edge_map) edge_fiber[base].push_back(eid);
  auto edge_image = [&](const std::map<std::string, std::string>& f, const std::string& eid) {
    const EdgeDecl& e = s.edges.at(eid);
    PortRef ia = lift_at.at(f.at(e.a.vertex)).at(dart_info.at(e.a).first);
    PortRef ib = mate.at(ia);
    // find the edge with these ends
    for (const auto& [xid, x] : s.edges)
      if ((x.a == ia && x.b == ib) || (x.a == ib && x.b == ia)) return xid;
    return std::string();
  };
  da.regular = true;
  for (const auto& [base, lifts] : edge_fiber) {
    std::set<std::string> orbit{lifts.front()};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& f : da.vertex_perms)
        for (const auto& e : std::vector<std::string>(orbit.begin(), orbit.end()))
          if (orbit.insert(edge_image(f, e)).second) grew = true;
    }
    if (orbit.size() != lifts.size()) da.regular = false;
  }
  (void)tgt;
  return da;
}

}  // namespace gos
