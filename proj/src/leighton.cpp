#include "gos/leighton.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

namespace gos {

namespace {

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct CSlot {
  std::string id;            // slot id in the common cover
  std::string cls;           // peg class
  std::string sa, sb;        // projected slots in a and b
  std::vector<int> bports;   // C-port k -> b-side port; a-side port is k itself
};

/// one way to glue a C-vertex over (av, bv): slot pairing + port bijections
/// for symmetric vertices, a dart bijection for point vertices
struct Layout {
  bool is_point = false;
  std::vector<CSlot> slots;
  std::vector<std::pair<PortRef, PortRef>> point_pairs;  // (a-dart, b-dart)
};

struct DartRec {
  int vert;
  std::string cslot;
  int cport;
  PortRef pa, pb;
  int match = -1;
};

struct CVert {
  std::string av, bv;
  long long la = 1, lb = 1;
  std::string id;
  std::vector<CSlot> slots;
  int first_dart = 0, ndarts = 0;
};

struct Engine {
  const Descriptor& a;
  const Descriptor& b;
  const Catalog& cat;
  long long na_cap = 1, nb_cap = 1;

  std::map<std::string, int> jcls;  // joint refinement classes
  // per-vertex dart lists and dart -> (opposite dart, edge) tables
  std::map<std::string, std::vector<PortRef>> darts_a, darts_b;
  std::map<PortRef, std::pair<PortRef, std::string>> opp_a, opp_b;

  std::vector<CVert> verts;
  std::vector<DartRec> darts;
  std::map<std::string, long long> used_a, used_b;

  long long nodes = 0;
  long long max_nodes = 0;
  std::chrono::steady_clock::time_point deadline;
  bool aborted = false;
  std::string abort_reason;

  Engine(const Descriptor& a_, const Descriptor& b_, const Catalog& c_)
      : a(a_), b(b_), cat(c_) {
    jcls = joint_classes(a, b, cat);
    index_side(a, darts_a, opp_a);
    index_side(b, darts_b, opp_b);
  }

  static void index_side(const Descriptor& d,
                         std::map<std::string, std::vector<PortRef>>& by_vertex,
                         std::map<PortRef, std::pair<PortRef, std::string>>& opp) {
    for (const auto& [p, eid] : d.darts()) {
      by_vertex[p.vertex].push_back(p);
      opp[p] = {d.other_end(d.edges.at(eid), p), eid};
    }
  }

  bool vertex_compatible(const std::string& av, const std::string& bv) const {
    auto ia = jcls.find("a:v:" + av);
    auto ib = jcls.find("b:v:" + bv);
    return ia != jcls.end() && ib != jcls.end() && ia->second == ib->second;
  }

  /// minimal (la, lb) with la*deg(av) = lb*deg(bv)
  std::pair<long long, long long> lambda_unit(const std::string& av,
                                              const std::string& bv) const {
    long long da = a.vertex(av)->degree, db = b.vertex(bv)->degree;
    long long l = std::lcm(da, db);
    return {l / da, l / db};
  }

  std::vector<Layout> layouts(const std::string& av, const std::string& bv,
                              long long la, long long lb) const {
    std::vector<Layout> out;
    const VertexInstance* va = a.vertex(av);
    const VertexInstance* vb = b.vertex(bv);
    const AtomType* at = cat.atom(va->atom);
    if (!at || va->atom != vb->atom) return out;

    if (at->point) {
      auto da = darts_a.count(av) ? darts_a.at(av) : std::vector<PortRef>{};
      auto db = darts_b.count(bv) ? darts_b.at(bv) : std::vector<PortRef>{};
      if (da.size() != db.size()) return out;
      std::vector<int> used(db.size(), 0);
      Layout cur;
      cur.is_point = true;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == da.size()) {
          out.push_back(cur);
          return;
        }
        for (std::size_t j = 0; j < db.size(); ++j) {
          if (used[j]) continue;
          used[j] = 1;
          cur.point_pairs.push_back({da[i], db[j]});
          rec(i + 1);
          cur.point_pairs.pop_back();
          used[j] = 0;
        }
      };
      rec(0);
      return out;
    }

    // symmetric: per peg class, pair up slot copies, then port bijections
    struct Copy {
      std::string slot;
      int idx;
    };
    std::vector<std::string> classes;
    for (const PegClass& pc : at->pegs) classes.push_back(pc.id);
    std::map<std::string, std::vector<Copy>> as, bs;
    for (const auto& [sid, cls] : va->slots)
      for (int i = 0; i < la; ++i) as[cls].push_back({sid, i});
    for (const auto& [sid, cls] : vb->slots)
      for (int i = 0; i < lb; ++i) bs[cls].push_back({sid, i});

    Layout cur;
    std::map<std::string, std::vector<int>> used;
    for (const std::string& c : classes) used[c].assign(bs[c].size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t ci,
                                                            std::size_t ai) {
      if (ci == classes.size()) {
        out.push_back(cur);
        return;
      }
      const std::string& c = classes[ci];
      if (as[c].size() != bs[c].size()) return;  // λ bookkeeping failed
      if (ai == as[c].size()) {
        rec(ci + 1, 0);
        return;
      }
      int mu = at->peg(c)->ends;
      auto perms = all_perms(mu);
      const Copy& A = as[c][ai];
      for (std::size_t j = 0; j < bs[c].size(); ++j) {
        if (used[c][j]) continue;
        used[c][j] = 1;
        const Copy& B = bs[c][j];
        for (const auto& pp : perms) {
          CSlot s;
          s.id = A.slot + "-" + std::to_string(A.idx);
          s.cls = c;
          s.sa = A.slot;
          s.sb = B.slot;
          s.bports = pp;
          cur.slots.push_back(std::move(s));
          rec(ci, ai + 1);
          cur.slots.pop_back();
        }
        used[c][j] = 0;
      }
    };
    rec(0, 0);
    return out;
  }

  /// materialize a C-vertex; returns its index
  int create_vertex(const std::string& av, const std::string& bv, long long la,
                    long long lb, const Layout& lay) {
    CVert w;
    w.av = av;
    w.bv = bv;
    w.la = la;
    w.lb = lb;
    w.id = "c" + std::to_string(verts.size());
    w.slots = lay.slots;
    w.first_dart = static_cast<int>(darts.size());
    int vi = static_cast<int>(verts.size());
    if (lay.is_point) {
      int k = 0;
      for (const auto& [pa, pb] : lay.point_pairs)
        darts.push_back({vi, kPointSlot, ++k, pa, pb, -1});
    } else {
      for (const CSlot& s : lay.slots) {
        int mu = static_cast<int>(s.bports.size());
        for (int k = 1; k <= mu; ++k)
          darts.push_back({vi, s.id, k, PortRef{av, s.sa, k},
                           PortRef{bv, s.sb, s.bports[k - 1]}, -1});
      }
    }
    w.ndarts = static_cast<int>(darts.size()) - w.first_dart;
    verts.push_back(std::move(w));
    used_a[av] += la;
    used_b[bv] += lb;
    return vi;
  }

  void destroy_vertex() {
    const CVert& w = verts.back();
    used_a[w.av] -= w.la;
    used_b[w.bv] -= w.lb;
    darts.resize(w.first_dart);
    verts.pop_back();
  }

  bool out_of_budget() {
    if (nodes > max_nodes) {
      aborted = true;
      abort_reason = "node budget";
      return true;
    }
    if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
      aborted = true;
      abort_reason = "time limit";
      return true;
    }
    return false;
  }

  bool dfs() {
    if (out_of_budget()) return false;
    int x = -1;
    for (std::size_t i = 0; i < darts.size(); ++i)
      if (darts[i].match < 0) {
        x = static_cast<int>(i);
        break;
      }
    if (x < 0) return true;  // every dart is glued: covering complete
    ++nodes;
    auto [oa, ea] = opp_a.at(darts[x].pa);
    auto [ob, eb] = opp_b.at(darts[x].pb);

    // try an existing unmatched dart with the right projections
    for (std::size_t y = 0; y < darts.size(); ++y) {
      if (static_cast<int>(y) == x || darts[y].match >= 0) continue;
      if (darts[y].pa != oa || darts[y].pb != ob) continue;
      darts[x].match = static_cast<int>(y);
      darts[y].match = x;
      if (dfs()) return true;
      darts[x].match = darts[y].match = -1;
      if (aborted) return false;
    }

    // or open a fresh C-vertex over the opposite pair
    const std::string& av = oa.vertex;
    const std::string& bv = ob.vertex;
    if (!vertex_compatible(av, bv)) return false;
    auto [ua, ub] = lambda_unit(av, bv);
    bool pt = cat.atom(a.vertex(av)->atom)->point;
    for (long long k = 1;; ++k) {
      if (pt && k > 1) break;  // point fibers always have local degree 1
      long long la = k * ua, lb = k * ub;
      if (used_a[av] + la > na_cap || used_b[bv] + lb > nb_cap) break;
      for (const Layout& lay : layouts(av, bv, la, lb)) {
        int vi = create_vertex(av, bv, la, lb, lay);
        // copy the dart range: recursion below may reallocate verts
        int fd = verts[vi].first_dart, nd = verts[vi].ndarts;
        for (int y = fd; y < fd + nd; ++y) {
          if (darts[y].pa != oa || darts[y].pb != ob) continue;
          darts[x].match = y;
          darts[y].match = x;
          if (dfs()) return true;
          darts[x].match = darts[y].match = -1;
          if (aborted) break;
        }
        destroy_vertex();
        if (aborted) return false;
      }
    }
    return false;
  }

  CommonCover harvest() const {
    CommonCover cc;
    cc.c.id = a.id + "-x-" + b.id;
    cc.c.catalog_ref = a.catalog_ref;
    cc.p.id = cc.c.id + "-pa";
    cc.p.source = cc.c.id;
    cc.p.target = a.id;
    cc.q.id = cc.c.id + "-pb";
    cc.q.source = cc.c.id;
    cc.q.target = b.id;
    // fibers are uniform once every dart is matched: read any one of them
    cc.na = used_a.at(a.vertices.begin()->first);
    cc.nb = used_b.at(b.vertices.begin()->first);
    cc.p.total_degree = cc.na;
    cc.q.total_degree = cc.nb;

    for (const CVert& w : verts) {
      VertexInstance v;
      v.id = w.id;
      v.atom = a.vertex(w.av)->atom;
      v.degree = w.la * a.vertex(w.av)->degree;
      for (const CSlot& s : w.slots) v.slots.push_back({s.id, s.cls});
      std::sort(v.slots.begin(), v.slots.end());
      cc.c.vertices[v.id] = v;
      cc.p.vertex_map[w.id] = w.av;
      cc.p.local_degree[w.id] = w.la;
      cc.q.vertex_map[w.id] = w.bv;
      cc.q.local_degree[w.id] = w.lb;
      for (const CSlot& s : w.slots) {
        cc.p.slot_map[{w.id, s.id}] = {w.av, s.sa};
        cc.q.slot_map[{w.id, s.id}] = {w.bv, s.sb};
      }
    }
    int en = 0;
    for (std::size_t x = 0; x < darts.size(); ++x) {
      const DartRec& dx = darts[x];
      PortRef px{verts[dx.vert].id, dx.cslot, dx.cport};
      cc.p.port_map[px] = dx.pa;
      cc.q.port_map[px] = dx.pb;
      if (dx.match < static_cast<int>(x)) continue;  // emit each edge once
      const DartRec& dy = darts[dx.match];
      EdgeDecl e;
      e.id = "e" + std::to_string(en++);
      e.a = px;
      e.b = PortRef{verts[dy.vert].id, dy.cslot, dy.cport};
      cc.p.edge_map[e.id] = opp_a.at(dx.pa).second;
      cc.q.edge_map[e.id] = opp_b.at(dx.pb).second;
      cc.c.edges[e.id] = std::move(e);
    }
    return cc;
  }
};

}  // namespace

std::optional<std::pair<long long, long long>> minimal_degree_pair(const Descriptor& a,
                                                                   const Descriptor& b,
                                                                   const Catalog& c) {
  auto jc = joint_classes(a, b, c);
  std::map<int, std::pair<long long, long long>> degsum;  // class -> (a, b)
  for (const auto& [vid, v] : a.vertices) degsum[jc.at("a:v:" + vid)].first += v.degree;
  for (const auto& [vid, v] : b.vertices) degsum[jc.at("b:v:" + vid)].second += v.degree;
  std::optional<Rat> ratio;  // N_a / N_b = degsum_b / degsum_a
  for (const auto& [cl, s] : degsum) {
    if (s.first == 0 || s.second == 0) return std::nullopt;  // one-sided class
    Rat r(s.second, s.first);
    if (!ratio) ratio = r;
    else if (*ratio != r) return std::nullopt;
  }
  if (!ratio) return std::nullopt;
  return std::make_pair(static_cast<long long>(ratio->numerator()),
                        static_cast<long long>(ratio->denominator()));
}

std::string ExhaustedReport::str() const {
  std::ostringstream os;
  os << "exhausted reason=" << reason << " seed=" << random_seed << "\n";
  for (const LadderEntry& e : ladder)
    os << "ladder na=" << e.na << " nb=" << e.nb << " nodes=" << e.nodes
       << " complete=" << (e.complete ? "yes" : "no") << "\n";
  return os.str();
}

CommonCoverResult common_cover(const Descriptor& a, const Descriptor& b,
                               const Catalog& cat, const SearchBudget& budget) {
  GeometryMatch gm = same_ideal_geometry(a, b, cat);
  if (!gm.yes) throw std::invalid_argument("signature mismatch: " + gm.witness_class);
  auto mdp = minimal_degree_pair(a, b, cat);
  CommonCoverResult res;
  res.report.random_seed = budget.random_seed;
  if (!mdp) {  // cannot happen when signatures match, but stay defensive
    res.report.reason = "incompatible degree ratios";
    return res;
  }

  Engine eng(a, b, cat);
  eng.max_nodes = budget.max_nodes;
  eng.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(budget.time_limit_s));

  const std::string av0 = a.vertices.begin()->first;
  for (long long k = 1; k <= budget.max_degree_pairs; ++k) {
    LadderEntry entry;
    entry.na = k * mdp->first;
    entry.nb = k * mdp->second;
    eng.na_cap = entry.na;
    eng.nb_cap = entry.nb;
    long long before = eng.nodes;

    for (const auto& [bv0, vb] : b.vertices) {
      if (!eng.vertex_compatible(av0, bv0)) continue;
      auto [ua, ub] = eng.lambda_unit(av0, bv0);
      bool pt0 = cat.atom(a.vertex(av0)->atom)->point;
      for (long long m = 1; m * ua <= eng.na_cap && m * ub <= eng.nb_cap; ++m) {
        if (pt0 && m > 1) break;
        for (const Layout& lay : eng.layouts(av0, bv0, m * ua, m * ub)) {
          eng.create_vertex(av0, bv0, m * ua, m * ub, lay);
          if (eng.dfs()) {
            CommonCover cc = eng.harvest();
            res.cover = std::move(cc);
            return res;
          }
          eng.destroy_vertex();
          if (eng.aborted) {
            entry.nodes = eng.nodes - before;
            res.report.ladder.push_back(entry);
            res.report.reason = eng.abort_reason;
            return res;
          }
        }
      }
    }
    entry.nodes = eng.nodes - before;
    entry.complete = true;
    res.report.ladder.push_back(entry);
  }
  res.report.reason = "degree ladder exhausted";
  return res;
}

std::string WitnessReport::str() const {
  std::ostringstream os;
  os << "indices na=" << na << " nb=" << nb << "\n";
  for (const VolumeLine& v : volumes)
    os << "volume atom=" << v.atom << " c=" << to_string(v.vc) << " a=" << to_string(v.va)
       << " b=" << to_string(v.vb) << "\n";
  if (euler_c)
    os << "euler c=" << to_string(*euler_c) << " a=" << to_string(*euler_a)
       << " b=" << to_string(*euler_b) << "\n";
  os << "verdict=" << (ok ? "witness" : "invalid") << "\n";
  return os.str();
}

WitnessReport commensurating_witness(const CommonCover& cc, const Descriptor& a,
                                     const Descriptor& b, const Catalog& cat) {
  WitnessReport r;
  r.na = cc.na;
  r.nb = cc.nb;
  auto vc = total_volume_by_atom(cc.c, cat);
  auto va = total_volume_by_atom(a, cat);
  auto vb = total_volume_by_atom(b, cat);
  r.ok = verify_cover(cc.p, cc.c, a, cat).ok() && verify_cover(cc.q, cc.c, b, cat).ok();
  for (const auto& [atom, v] : vc) {
    WitnessReport::VolumeLine line{atom, v, va.count(atom) ? va[atom] : Rat(0),
                                   vb.count(atom) ? vb[atom] : Rat(0)};
    if (line.vc != Rat(cc.na) * line.va || line.vc != Rat(cc.nb) * line.vb) r.ok = false;
    r.volumes.push_back(line);
  }
  try {
    r.euler_c = euler(cc.c, cat);
    r.euler_a = euler(a, cat);
    r.euler_b = euler(b, cat);
    if (*r.euler_c != Rat(cc.na) * *r.euler_a || *r.euler_c != Rat(cc.nb) * *r.euler_b)
      r.ok = false;
  } catch (...) {
    // euler undeclared for some atom: volumes alone carry the witness
  }
  return r;
}

}  // namespace gos
