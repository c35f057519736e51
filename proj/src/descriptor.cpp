#include "gos/descriptor.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gos {

const std::string* VertexInstance::peg_class_of(const std::string& slot_id) const {
  for (const auto& [sid, cls] : slots)
    if (sid == slot_id) return &cls;
  return nullptr;
}

const VertexInstance* Descriptor::vertex(const std::string& v) const {
  auto it = vertices.find(v);
  return it == vertices.end() ? nullptr : &it->second;
}

std::vector<std::pair<PortRef, std::string>> Descriptor::darts() const {
  std::vector<std::pair<PortRef, std::string>> out;
  for (const auto& [eid, e] : edges) {
    out.push_back({e.a, eid});
    out.push_back({e.b, eid});
  }
  std::sort(out.begin(), out.end());
  return out;
}

const PortRef& Descriptor::other_end(const EdgeDecl& e, const PortRef& p) const {
  assert(e.a == p || e.b == p);
  return e.a == p ? e.b : e.a;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : items) os << v.code << ": " << v.detail << "\n";
  return os.str();
}

ValidationReport validate(const Descriptor& d, const Catalog& c) {
  ValidationReport rep;
  for (const auto& msg : check_catalog(c)) rep.add("catalog", msg);

  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at) {
      rep.add("unknown atom", vid + " references " + v.atom);
      continue;
    }
    if (v.degree < 1) rep.add("degree", vid + ": degree must be positive");
    if (at->point) {
      if (v.degree != 1) rep.add("degree", vid + ": point vertex with degree != 1");
      if (!v.slots.empty()) rep.add("slot count", vid + ": point vertex with peg slots");
    } else {
      // exactly `degree` slots per declared peg class
      std::map<std::string, long long> per_class;
      for (const auto& [sid, cls] : v.slots) {
        if (!at->peg(cls))
          rep.add("unknown peg", vid + "." + sid + " references " + cls);
        else
          per_class[cls]++;
      }
      for (const auto& p : at->pegs) {
        long long n = per_class.count(p.id) ? per_class[p.id] : 0;
        if (n != v.degree)
          rep.add("slot count", vid + ": " + std::to_string(n) + " slots of class " + p.id +
                                    ", expected degree " + std::to_string(v.degree));
      }
      // duplicate slot ids
      std::set<std::string> seen;
      for (const auto& [sid, cls] : v.slots)
        if (!seen.insert(sid).second) rep.add("duplicate id", vid + "." + sid);
    }
  }

  // Port usage: every symmetric port used exactly once, every edge-end on a legal port.
  std::map<PortRef, int> uses;
  for (const auto& [eid, e] : d.edges) {
    for (const PortRef* p : {&e.a, &e.b}) {
      const VertexInstance* v = d.vertex(p->vertex);
      if (!v) {
        rep.add("unknown vertex", eid + " references " + p->vertex);
        continue;
      }
      const AtomType* at = c.atom(v->atom);
      if (at && at->point) {
        if (p->slot != kPointSlot)
          rep.add("unknown slot", eid + ": point vertex port " + p->str());
      } else if (at) {
        const std::string* cls = v->peg_class_of(p->slot);
        if (!cls) {
          rep.add("unknown slot", eid + ": no slot " + p->str());
        } else {
          const PegClass* peg = at->peg(*cls);
          if (peg && (p->port < 1 || p->port > peg->ends))
            rep.add("port out of range", eid + ": " + p->str() + " (ends=" +
                                             std::to_string(peg->ends) + ")");
        }
      }
      uses[*p]++;
    }
    if (e.a == e.b) rep.add("degenerate edge", eid + ": both ends on one port");
  }
  for (const auto& [p, n] : uses)
    if (n > 1) rep.add("port reuse", p.str() + " used by " + std::to_string(n) + " edge-ends");
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at || at->point) continue;
    for (const auto& [sid, cls] : v.slots) {
      const PegClass* peg = at->peg(cls);
      if (!peg) continue;
      for (int k = 1; k <= peg->ends; ++k) {
        PortRef p{vid, sid, k};
        if (!uses.count(p)) rep.add("unused port", p.str());
      }
    }
  }

  // Connectivity of the underlying graph.
  if (!d.vertices.empty()) {
    std::set<std::string> seen;
    std::queue<std::string> bfs;
    bfs.push(d.vertices.begin()->first);
    seen.insert(d.vertices.begin()->first);
    while (!bfs.empty()) {
      std::string v = bfs.front();
      bfs.pop();
      for (const auto& [eid, e] : d.edges) {
        for (const auto& [from, to] : {std::pair{e.a.vertex, e.b.vertex},
                                       std::pair{e.b.vertex, e.a.vertex}}) {
          if (from == v && d.vertices.count(to) && seen.insert(to).second) bfs.push(to);
        }
      }
    }
    if (seen.size() != d.vertices.size())
      rep.add("not connected", std::to_string(d.vertices.size() - seen.size()) +
                                   " vertices unreachable from " + d.vertices.begin()->first);
  } else {
    rep.add("empty", "descriptor has no vertices");
  }
  return rep;
}

Rat euler(const Descriptor& d, const Catalog& c) {
  Rat chi(0);
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at) throw std::runtime_error("unknown atom " + v.atom);
    auto base = at->euler();
    if (!base) throw std::runtime_error("atom " + v.atom + " has no basechi");
    chi += Rat(v.degree) * *base;
  }
  chi -= Rat(static_cast<long long>(d.edges.size()));
  return chi;
}

std::map<std::string, Rat> total_volume_by_atom(const Descriptor& d, const Catalog& c) {
  std::map<std::string, Rat> out;
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at) throw std::runtime_error("unknown atom " + v.atom);
    auto [it, inserted] = out.try_emplace(v.atom, Rat(0));
    it->second += Rat(v.degree) * at->base_volume;
  }
  return out;
}

}  // namespace gos
