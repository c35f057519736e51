#include "gos/invariants.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gos {

std::set<std::string> qi_class(const Descriptor& d, const Catalog& c) {
  std::set<std::string> out;
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    // isometry type of the model space, not the atom id: two surfaces of
    // different genus share one entry here
    if (at && !at->point) out.insert(field_name(at->field) + std::to_string(at->dim));
  }
  return out;
}

std::vector<Rat> l2_betti(const Descriptor& d, const Catalog& c) {
  long long rank = static_cast<long long>(d.edges.size()) -
                   static_cast<long long>(d.vertices.size()) + 1;
  long long factors = 0;
  std::size_t len = 2;
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at || at->point) continue;
    ++factors;
    if (!at->l2_profile) throw std::runtime_error("missing l2 profile on atom " + v.atom);
    len = std::max(len, at->l2_profile->size());
  }
  if (factors == 0 && rank == 0) return {Rat(1)};  // trivial group
  std::vector<Rat> b(len, Rat(0));
  for (const auto& [vid, v] : d.vertices) {
    const AtomType* at = c.atom(v.atom);
    if (!at || at->point) continue;
    for (std::size_t k = 0; k < at->l2_profile->size(); ++k)
      b[k] += Rat(v.degree) * (*at->l2_profile)[k];
  }
  b[1] += Rat(factors + rank - 1);
  return b;
}

InvariantReport invariant_report(const Descriptor& d, const Catalog& c) {
  InvariantReport r;
  r.qi = qi_class(d, c);
  r.infinite_ended = d.edges.size() >= 1 || d.vertices.size() >= 2;
  try {
    r.euler_val = euler(d, c);
  } catch (...) {
  }
  r.volume_by_atom = total_volume_by_atom(d, c);
  try {
    r.l2 = l2_betti(d, c);
  } catch (...) {
  }
  return r;
}

std::string InvariantReport::str() const {
  std::ostringstream os;
  os << "qi_class       =";
  for (const std::string& t : qi) os << " " << t;
  os << "\n";
  os << "infinite_ended = " << (infinite_ended ? "yes" : "no") << "\n";
  if (euler_val) os << "euler          = " << to_string(*euler_val) << "\n";
  for (const auto& [t, v] : volume_by_atom)
    os << "volume " << t << " = " << to_string(v) << "\n";
  if (l2) {
    os << "l2             =";
    for (const Rat& x : *l2) os << " " << to_string(x);
    os << "\n";
  }
  os << "verdict=report\n";
  if (euler_val) os << "euler=" << to_string(*euler_val) << "\n";
  return os.str();
}

std::string ObstructionVerdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case QIMismatch:
      os << "verdict=QIMismatch\n";
      break;
    case CovolumeRatioMismatch:
      os << "verdict=CovolumeRatioMismatch\natom=" << atom
         << "\nwitness=" << to_string(ratio) << "\nbaseline=" << to_string(baseline)
         << "\n";
      break;
    case L2RatioMismatch:
      os << "verdict=L2RatioMismatch\nk=" << k << "\nk2=" << k2
         << "\nwitness=" << to_string(ratio) << "\nbaseline=" << to_string(baseline)
         << "\n";
      break;
    case NoObstructionFound:
      os << "verdict=NoObstructionFound\n";
      break;
  }
  return os.str();
}

ObstructionVerdict obstruction(const Descriptor& a, const Descriptor& b,
                               const Catalog& c) {
  ObstructionVerdict v;
  if (qi_class(a, c) != qi_class(b, c)) {
    v.kind = ObstructionVerdict::QIMismatch;
    return v;
  }

  auto va = total_volume_by_atom(a, c);
  auto vb = total_volume_by_atom(b, c);
  std::optional<Rat> base;
  std::string base_atom;
  for (const auto& [t, x] : va) {
    auto it = vb.find(t);
    if (it == vb.end()) continue;  // atom on one side only: not a shared ratio
    Rat r = x / it->second;
    if (!base) {
      base = r;
      base_atom = t;
    } else if (*base != r) {
      v.kind = ObstructionVerdict::CovolumeRatioMismatch;
      v.atom = t;
      v.ratio = r;
      v.baseline = *base;
      return v;
    }
  }

  std::vector<Rat> la, lb;
  try {
    la = l2_betti(a, c);
    lb = l2_betti(b, c);
  } catch (...) {
    return v;  // profiles missing: l2 stage skipped
  }
  std::size_t len = std::max(la.size(), lb.size());
  la.resize(len, Rat(0));
  lb.resize(len, Rat(0));
  std::optional<Rat> l2base;
  int l2k = -1;
  for (std::size_t k = 0; k < len; ++k) {
    bool za = la[k] == Rat(0), zb = lb[k] == Rat(0);
    if (za && zb) continue;
    if (za != zb) {  // one-sided vanishing
      v.kind = ObstructionVerdict::L2RatioMismatch;
      v.k = l2k;
      v.k2 = static_cast<int>(k);
      v.ratio = zb ? Rat(0) : la[k] / lb[k];
      v.baseline = l2base ? *l2base : Rat(0);
      return v;
    }
    Rat r = la[k] / lb[k];
    if (!l2base) {
      l2base = r;
      l2k = static_cast<int>(k);
    } else if (*l2base != r) {
      v.kind = ObstructionVerdict::L2RatioMismatch;
      v.k = l2k;
      v.k2 = static_cast<int>(k);
      v.ratio = r;
      v.baseline = *l2base;
      return v;
    }
  }
  return v;
}

namespace {
void check_genus(int g) {
  if (g < 2) throw std::invalid_argument("genus must be >= 2");
}
}  // namespace

bool whyte_decider(int g1, int g2, int h1, int h2) {
  for (int g : {g1, g2, h1, h2}) check_genus(g);
  return g1 + g2 == h1 + h2;
}

bool surface_rigidity_decider(int g1, int g2, int h1, int h2) {
  for (int g : {g1, g2, h1, h2}) check_genus(g);
  return std::minmax(g1, g2) == std::minmax(h1, h2);
}

bool volume_matching_decider(const Descriptor& a, const Descriptor& b,
                             const Catalog& c) {
  auto pair_of = [&](const Descriptor& d) {
    std::vector<Rat> vols;
    for (const auto& [vid, v] : d.vertices) {
      const AtomType* at = c.atom(v.atom);
      if (at && !at->point) vols.push_back(Rat(v.degree) * at->base_volume);
    }
    if (vols.size() != 2)
      throw std::invalid_argument("descriptor " + d.id +
                                  " is not a two-factor manifold pair");
    std::sort(vols.begin(), vols.end());
    return vols;
  };
  return pair_of(a) == pair_of(b);
}

ValidationReport claim1_index_check(const CoveringMap& m, const Descriptor& src,
                                    const Descriptor& tgt, const Catalog& c) {
  ValidationReport rep;
  auto vs = total_volume_by_atom(src, c);
  auto vt = total_volume_by_atom(tgt, c);
  for (const auto& [t, v] : vt) {
    Rat up = vs.count(t) ? vs[t] : Rat(0);
    if (up != Rat(m.total_degree) * v)
      rep.add("index identity", "atom " + t + ": " + to_string(up) + " != " +
                                    std::to_string(m.total_degree) + " * " + to_string(v));
  }
  for (const auto& [t, v] : vs)
    if (!vt.count(t)) rep.add("index identity", "atom " + t + " absent downstairs");
  return rep;
}

}  // namespace gos
