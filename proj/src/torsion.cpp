#include "gos/torsion.hpp"

#include <algorithm>
#include <stdexcept>

namespace gos {

namespace {

struct Factor {
  std::string vertex;
  std::size_t order = 1;  // |G_v|; 1 when no group is declared
};

}  // namespace

BuiltCover torsion_free_cover(const Descriptor& d, const Catalog& cat,
                              const GroupTable& groups, std::size_t cap) {
  // one direct-product factor per vertex, in vertex order
  std::vector<Factor> factors;
  std::map<std::string, std::size_t> factor_of;
  std::size_t q_order = 1;
  for (const auto& [vid, v] : d.vertices) {
    Factor f{vid, 1};
    if (v.local_group) {
      auto it = groups.find(*v.local_group);
      if (it == groups.end())
        throw std::invalid_argument("missing group data: " + *v.local_group);
      f.order = it->second.group.order();
      const AtomType* at = cat.atom(v.atom);
      if (at && at->point && f.order > 1)
        throw std::invalid_argument("nontrivial group on point vertex " + vid);
    }
    if (q_order > cap / std::max<std::size_t>(f.order, 1))
      throw std::runtime_error("order cap exceeded");
    q_order *= f.order;
    factor_of[vid] = factors.size();
    factors.push_back(f);
  }

  // elements of Q as mixed-radix tuples over the factors
  auto tuple_of = [&](std::size_t t) {
    std::vector<std::size_t> e(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      e[i] = t % factors[i].order;
      t /= factors[i].order;
    }
    return e;
  };
  // coset index of q in Q / G_v: rank of the tuple with the v-coordinate zeroed
  auto coset_of = [&](const std::vector<std::size_t>& e, std::size_t vi) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      r = r * (i == vi ? 1 : factors[i].order) + (i == vi ? 0 : e[i]);
    return r;
  };

  BuiltCover out;
  out.total.id = d.id + "-tf";
  out.total.catalog_ref = d.catalog_ref;
  CoveringMap& m = out.map;
  m.id = out.total.id + "-p";
  m.source = out.total.id;
  m.target = d.id;
  m.total_degree = static_cast<long long>(q_order);

  auto lift_vertex = [&](const std::string& vid, std::size_t coset) {
    return vid + "-q" + std::to_string(coset);
  };
  for (const auto& [vid, v] : d.vertices) {
    std::size_t vi = factor_of[vid];
    std::size_t lambda = factors[vi].order;
    std::size_t fiber = q_order / lambda;
    for (std::size_t cidx = 0; cidx < fiber; ++cidx) {
      VertexInstance w;
      w.id = lift_vertex(vid, cidx);
      w.atom = v.atom;
      w.degree = static_cast<long long>(lambda) * v.degree;
      for (const auto& [sid, cls] : v.slots)
        for (std::size_t j = 0; j < lambda; ++j) {
          std::string s = sid + "-" + std::to_string(j);
          w.slots.push_back({s, cls});
          m.slot_map[{w.id, s}] = {vid, sid};
        }
      std::sort(w.slots.begin(), w.slots.end());
      m.vertex_map[w.id] = vid;
      m.local_degree[w.id] = static_cast<long long>(lambda);
      out.total.vertices[w.id] = std::move(w);
    }
  }

  auto lift_port = [&](const PortRef& p, const std::vector<std::size_t>& e) {
    std::size_t vi = factor_of[p.vertex];
    std::string wid = lift_vertex(p.vertex, coset_of(e, vi));
    std::string slot =
        p.slot == kPointSlot ? kPointSlot : p.slot + "-" + std::to_string(e[vi]);
    PortRef lifted{wid, slot, p.port};
    m.port_map[lifted] = p;
    return lifted;
  };
  for (const auto& [eid, ed] : d.edges) {
    for (std::size_t t = 0; t < q_order; ++t) {
      auto e = tuple_of(t);
      EdgeDecl le;
      le.id = eid + "-" + std::to_string(t);
      le.a = lift_port(ed.a, e);
      le.b = lift_port(ed.b, e);
      m.edge_map[le.id] = eid;
      out.total.edges[le.id] = std::move(le);
    }
  }
  return out;
}

}  // namespace gos
