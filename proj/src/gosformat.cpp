#include "gos/gosformat.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace gos {

const Descriptor& Document::descriptor(const std::string& id) const {
  auto it = descriptors.find(id);
  if (it == descriptors.end()) throw std::out_of_range("no descriptor " + id);
  return it->second;
}

namespace {

struct Token {
  std::string text;
  int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool legal_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

struct LineCtx {
  int line;
  const std::vector<Token>& toks;

  [[noreturn]] void fail(std::size_t tok_idx, const std::string& msg) const {
    int col = tok_idx < toks.size() ? toks[tok_idx].col : 1;
    throw ParseError(line, col, msg);
  }
  const std::string& arg(std::size_t i, const std::string& what) const {
    if (i >= toks.size()) fail(toks.size(), "missing " + what);
    return toks[i].text;
  }
  std::string id(std::size_t i, const std::string& what) const {
    const std::string& s = arg(i, what);
    if (!legal_id(s)) fail(i, "bad " + what + " '" + s + "'");
    return s;
  }
  /// value of `key=` among tokens [from..); empty optional if absent
  std::optional<std::string> kv(const std::string& key, std::size_t from = 2) const {
    for (std::size_t i = from; i < toks.size(); ++i) {
      const std::string& t = toks[i].text;
      if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 &&
          t[key.size()] == '=')
        return t.substr(key.size() + 1);
    }
    return std::nullopt;
  }
  std::string need_kv(const std::string& key, std::size_t from = 2) const {
    auto v = kv(key, from);
    if (!v) fail(toks.size(), "missing " + key + "=");
    return *v;
  }
  long long num(const std::string& s, const std::string& what) const {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (...) {
      fail(toks.size(), "bad " + what + " '" + s + "'");
    }
  }
  Rat rat(const std::string& s, const std::string& what) const {
    try {
      return parse_rational(s);
    } catch (...) {
      fail(toks.size(), "bad " + what + " '" + s + "'");
    }
  }
};

PortRef parse_port(const LineCtx& cx, std::size_t i, const std::string& what) {
  const std::string& s = cx.arg(i, what);
  auto d1 = s.find('.');
  auto d2 = s.rfind('.');
  if (d1 == std::string::npos || d2 == d1) cx.fail(i, what + " must be vertex.slot.port");
  PortRef p;
  p.vertex = s.substr(0, d1);
  p.slot = s.substr(d1 + 1, d2 - d1 - 1);
  std::string k = s.substr(d2 + 1);
  if (!legal_id(p.vertex) || (p.slot != kPointSlot && !legal_id(p.slot)))
    cx.fail(i, "bad port reference '" + s + "'");
  p.port = static_cast<int>(cx.num(k, "port index"));
  if (p.port < 1) cx.fail(i, "port index must be >= 1");
  return p;
}

std::pair<std::string, std::string> parse_slot_ref(const LineCtx& cx, std::size_t i,
                                                   const std::string& what) {
  const std::string& s = cx.arg(i, what);
  auto d = s.find('.');
  if (d == std::string::npos) cx.fail(i, what + " must be vertex.slot");
  return {s.substr(0, d), s.substr(d + 1)};
}

/// rest of the raw line starting at token i (for cycle notation with spaces)
std::string rest(const std::string& raw, const LineCtx& cx, std::size_t i,
                 const std::string& what) {
  if (i >= cx.toks.size()) cx.fail(i, "missing " + what);
  std::string s = raw.substr(cx.toks[i].col - 1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// raw per-group parse state, closed into PermGroups afterwards
struct GroupDraft {
  int line = 0;
  int degree = 0;
  std::vector<Perm> gens;
  std::vector<std::pair<std::string, std::vector<Perm>>> marked;  // in first-seen order
  std::vector<Perm> pegact;
};

struct EdgeSite {
  int line;
  std::string desc;
  std::string edge;
};

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::string cur_desc;  // id of the descriptor being filled
  std::map<std::string, GroupDraft> drafts;
  std::vector<EdgeSite> edge_sites;
  std::map<std::string, int> desc_line, cover_line;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::vector<Token> toks = tokenize(raw);
    if (toks.empty()) continue;
    any = true;
    LineCtx cx{lineno, toks};
    const std::string& kw = toks[0].text;

    if (kw == "catalog") {
      if (doc.has_catalog) cx.fail(1, "duplicate catalog");
      doc.catalog.id = cx.id(1, "catalog id");
      doc.has_catalog = true;
    } else if (kw == "atom") {
      if (!doc.has_catalog) cx.fail(0, "atom before catalog");
      AtomType at;
      at.id = cx.id(1, "atom id");
      if (doc.catalog.atoms.count(at.id)) cx.fail(1, "duplicate atom " + at.id);
      std::string kind = cx.need_kv("kind");
      if (kind == "point") {
        at.point = true;
        at.base_volume = Rat(1);
        at.base_euler = Rat(1);
      } else if (kind == "symmetric") {
        auto f = field_from_name(cx.need_kv("field"));
        if (!f) cx.fail(2, "bad field");
        at.field = *f;
        at.dim = static_cast<int>(cx.num(cx.need_kv("dim"), "dim"));
        if (at.dim < 2) cx.fail(2, "dim must be >= 2");
        at.base_volume = cx.rat(cx.need_kv("basevol"), "basevol");
        if (at.base_volume <= Rat(0)) cx.fail(2, "basevol must be positive");
        if (auto e = cx.kv("basechi")) at.base_euler = cx.rat(*e, "basechi");
        if (auto l = cx.kv("l2")) {
          std::vector<Rat> prof;
          std::istringstream ls(*l);
          std::string item;
          while (std::getline(ls, item, ',')) prof.push_back(cx.rat(item, "l2 entry"));
          at.l2_profile = std::move(prof);
        }
      } else {
        cx.fail(2, "kind must be point or symmetric");
      }
      doc.catalog.atoms.emplace(at.id, std::move(at));
    } else if (kw == "peg") {
      std::string aid = cx.id(1, "atom id");
      auto it = doc.catalog.atoms.find(aid);
      if (it == doc.catalog.atoms.end()) cx.fail(1, "unknown atom " + aid);
      PegClass pc;
      pc.id = cx.id(2, "peg id");
      pc.ends = static_cast<int>(cx.num(cx.need_kv("ends", 3), "ends"));
      if (pc.ends < 1) cx.fail(3, "ends must be >= 1");
      for (const PegClass& q : it->second.pegs)
        if (q.id == pc.id) cx.fail(2, "duplicate peg " + pc.id);
      it->second.pegs.push_back(pc);
      std::sort(it->second.pegs.begin(), it->second.pegs.end(),
                [](const PegClass& x, const PegClass& y) { return x.id < y.id; });
    } else if (kw == "descriptor") {
      Descriptor d;
      d.id = cx.id(1, "descriptor id");
      if (doc.descriptors.count(d.id)) cx.fail(1, "duplicate descriptor " + d.id);
      d.catalog_ref = cx.need_kv("catalog");
      cur_desc = d.id;
      desc_line[d.id] = lineno;
      doc.descriptors.emplace(d.id, std::move(d));
    } else if (kw == "vertex") {
      if (cur_desc.empty()) cx.fail(0, "vertex before descriptor");
      Descriptor& d = doc.descriptors.at(cur_desc);
      VertexInstance v;
      v.id = cx.id(1, "vertex id");
      if (d.vertices.count(v.id)) cx.fail(1, "duplicate vertex " + v.id);
      v.atom = cx.need_kv("atom");
      if (!doc.catalog.atoms.count(v.atom)) cx.fail(2, "unknown atom " + v.atom);
      v.degree = cx.num(cx.need_kv("deg"), "deg");
      if (v.degree < 1) cx.fail(2, "deg must be >= 1");
      if (auto g = cx.kv("group")) v.local_group = *g;
      d.vertices.emplace(v.id, std::move(v));
    } else if (kw == "slot") {
      if (cur_desc.empty()) cx.fail(0, "slot before descriptor");
      Descriptor& d = doc.descriptors.at(cur_desc);
      std::string vid = cx.id(1, "vertex id");
      auto vt = d.vertices.find(vid);
      if (vt == d.vertices.end()) cx.fail(1, "unknown vertex " + vid);
      std::string sid = cx.id(2, "slot id");
      std::string cls = cx.need_kv("class", 3);
      const AtomType* at = doc.catalog.atom(vt->second.atom);
      if (!at || !at->peg(cls)) cx.fail(3, "unknown peg class " + cls);
      for (const auto& [s, c] : vt->second.slots)
        if (s == sid) cx.fail(2, "duplicate slot " + sid);
      vt->second.slots.push_back({sid, cls});
      std::sort(vt->second.slots.begin(), vt->second.slots.end());
    } else if (kw == "edge") {
      if (cur_desc.empty()) cx.fail(0, "edge before descriptor");
      Descriptor& d = doc.descriptors.at(cur_desc);
      EdgeDecl e;
      e.id = cx.id(1, "edge id");
      if (d.edges.count(e.id)) cx.fail(1, "duplicate edge " + e.id);
      e.a = parse_port(cx, 2, "end A");
      e.b = parse_port(cx, 3, "end B");
      // port-range check needs the slot table, which is complete by now for
      // well-ordered documents; defer to a post-pass for the rest
      edge_sites.push_back({lineno, cur_desc, e.id});
      d.edges.emplace(e.id, std::move(e));
    } else if (kw == "group") {
      std::string gid = cx.id(1, "group id");
      if (drafts.count(gid)) cx.fail(1, "duplicate group " + gid);
      GroupDraft g;
      g.line = lineno;
      g.degree = static_cast<int>(cx.num(cx.need_kv("deg"), "deg"));
      if (g.degree < 1) cx.fail(2, "deg must be >= 1");
      drafts.emplace(gid, std::move(g));
    } else if (kw == "gen" || kw == "marked" || kw == "pegact") {
      std::string gid = cx.id(1, "group id");
      auto it = drafts.find(gid);
      if (it == drafts.end()) cx.fail(1, "unknown group " + gid);
      std::size_t word_at = kw == "marked" ? 3 : 2;
      std::string word = rest(raw, cx, word_at, "cycle word");
      Perm p = Perm::identity(0);
      try {
        p = Perm::parse_cycles(word, kw == "pegact" ? 0 : it->second.degree);
      } catch (const std::exception& e) {
        cx.fail(word_at, e.what());
      }
      if (kw == "gen") {
        if (p.degree() > it->second.degree) cx.fail(word_at, "point exceeds group degree");
        it->second.gens.push_back(p);
      } else if (kw == "pegact") {
        it->second.pegact.push_back(p);
      } else {
        if (p.degree() > it->second.degree) cx.fail(word_at, "point exceeds group degree");
        std::string name = cx.id(2, "subgroup name");
        auto& mk = it->second.marked;
        auto mt = std::find_if(mk.begin(), mk.end(),
                               [&](const auto& x) { return x.first == name; });
        if (mt == mk.end()) mk.push_back({name, {p}});
        else mt->second.push_back(p);
      }
    } else if (kw == "cover") {
      CoveringMap m;
      m.id = cx.id(1, "cover id");
      if (doc.covers.count(m.id)) cx.fail(1, "duplicate cover " + m.id);
      m.source = cx.id(2, "source id");
      if (cx.arg(3, "'->'") != "->") cx.fail(3, "expected ->");
      m.target = cx.id(4, "target id");
      m.total_degree = cx.num(cx.need_kv("N", 5), "N");
      if (m.total_degree < 1) cx.fail(5, "N must be >= 1");
      cover_line[m.id] = lineno;
      doc.covers.emplace(m.id, std::move(m));
    } else if (kw == "vmap" || kw == "smap" || kw == "emap" || kw == "pmap") {
      std::string cid = cx.id(1, "cover id");
      auto it = doc.covers.find(cid);
      if (it == doc.covers.end()) cx.fail(1, "unknown cover " + cid);
      CoveringMap& m = it->second;
      if (cx.arg(3, "'->'") != "->") cx.fail(3, "expected ->");
      if (kw == "vmap") {
        std::string w = cx.id(2, "source vertex");
        m.vertex_map[w] = cx.id(4, "target vertex");
        m.local_degree[w] = cx.num(cx.need_kv("local", 5), "local");
      } else if (kw == "smap") {
        m.slot_map[parse_slot_ref(cx, 2, "source slot")] =
            parse_slot_ref(cx, 4, "target slot");
      } else if (kw == "emap") {
        m.edge_map[cx.id(2, "source edge")] = cx.id(4, "target edge");
      } else {
        m.port_map[parse_port(cx, 2, "source port")] = parse_port(cx, 4, "target port");
      }
    } else if (kw == "certificate") {
      Certificate c;
      c.id = cx.id(1, "certificate id");
      if (doc.certificates.count(c.id)) cx.fail(1, "duplicate certificate " + c.id);
      c.a = cx.need_kv("a");
      c.b = cx.need_kv("b");
      doc.certificates.emplace(c.id, std::move(c));
    } else if (kw == "stage1" || kw == "lift" || kw == "stage2" || kw == "stage3" ||
               kw == "stage4" || kw == "summary") {
      std::string cid = cx.id(1, "certificate id");
      auto it = doc.certificates.find(cid);
      if (it == doc.certificates.end()) cx.fail(1, "unknown certificate " + cid);
      Certificate& c = it->second;
      if (kw == "stage1") {
        c.stage1_common[cx.id(2, "atom id")] = cx.num(cx.arg(3, "degree"), "degree");
      } else if (kw == "lift") {
        c.stage1_lift[cx.arg(2, "vertex ref")] = cx.num(cx.arg(3, "degree"), "degree");
      } else if (kw == "stage2") {
        c.stage2_a = cx.need_kv("a");
        c.stage2_b = cx.need_kv("b");
      } else if (kw == "stage3") {
        c.stage3_hash = cx.need_kv("hash");
      } else if (kw == "stage4") {
        c.stage4_c = cx.need_kv("c");
        c.stage4_p = cx.need_kv("p");
        c.stage4_q = cx.need_kv("q");
        c.na = cx.num(cx.need_kv("na"), "na");
        c.nb = cx.num(cx.need_kv("nb"), "nb");
      } else {
        c.summary[cx.arg(2, "key")] = cx.arg(3, "value");
      }
    } else {
      cx.fail(0, "unknown directive '" + kw + "'");
    }
  }
  if (!any) throw ParseError(1, 1, "empty document");

  // post-pass: port ranges now that all slot tables are complete
  for (const EdgeSite& es : edge_sites) {
    const Descriptor& d = doc.descriptors.at(es.desc);
    const EdgeDecl& e = d.edges.at(es.edge);
    for (const PortRef* p : {&e.a, &e.b}) {
      const VertexInstance* v = d.vertex(p->vertex);
      if (!v) throw ParseError(es.line, 1, "unknown vertex " + p->vertex);
      const AtomType* at = doc.catalog.atom(v->atom);
      if (p->slot == kPointSlot) {
        if (at && !at->point)
          throw ParseError(es.line, 1, "slot @ on non-point vertex " + p->vertex);
        continue;
      }
      const std::string* cls = v->peg_class_of(p->slot);
      if (!cls)
        throw ParseError(es.line, 1, "unknown slot " + p->vertex + "." + p->slot);
      const PegClass* pc = at ? at->peg(*cls) : nullptr;
      if (pc && p->port > pc->ends)
        throw ParseError(es.line, 1, "port out of range: " + p->str() + " (ends=" +
                                         std::to_string(pc->ends) + ")");
    }
  }
  for (const auto& [did, line] : desc_line) {
    const Descriptor& d = doc.descriptors.at(did);
    if (doc.has_catalog && d.catalog_ref != doc.catalog.id)
      throw ParseError(line, 1, "unknown catalog " + d.catalog_ref);
  }
  for (const auto& [cid, line] : cover_line) {
    const CoveringMap& m = doc.covers.at(cid);
    for (const std::string* r : {&m.source, &m.target})
      if (!doc.descriptors.count(*r))
        throw ParseError(line, 1, "unknown descriptor " + *r);
  }

  // close the group drafts
  for (auto& [gid, g] : drafts) {
    LocalSymmetryDatum datum;
    datum.id = gid;
    try {
      datum.group = PermGroup::closure(g.degree, g.gens);
      for (auto& [name, gens] : g.marked)
        datum.marked.emplace(name, Subgroup::from_gens(g.degree, gens));
    } catch (const std::exception& e) {
      throw ParseError(g.line, 1, e.what());
    }
    datum.peg_action = std::move(g.pegact);
    doc.groups.emplace(gid, std::move(datum));
  }
  return doc;
}

namespace {

void emit_descriptor(std::ostream& os, const Descriptor& d) {
  os << "descriptor " << d.id << " catalog=" << d.catalog_ref << "\n";
  for (const auto& [vid, v] : d.vertices) {
    os << "vertex " << vid << " atom=" << v.atom << " deg=" << v.degree;
    if (v.local_group) os << " group=" << *v.local_group;
    os << "\n";
    for (const auto& [sid, cls] : v.slots)
      os << "slot " << vid << " " << sid << " class=" << cls << "\n";
  }
  for (const auto& [eid, e] : d.edges) {
    const PortRef& a = std::min(e.a, e.b);
    const PortRef& b = std::max(e.a, e.b);
    os << "edge " << eid << " " << a.str() << " " << b.str() << "\n";
  }
}

void emit_cover(std::ostream& os, const CoveringMap& m) {
  os << "cover " << m.id << " " << m.source << " -> " << m.target
     << " N=" << m.total_degree << "\n";
  for (const auto& [w, v] : m.vertex_map)
    os << "vmap " << m.id << " " << w << " -> " << v << " local=" << m.local_degree.at(w)
       << "\n";
  for (const auto& [s, t] : m.slot_map)
    os << "smap " << m.id << " " << s.first << "." << s.second << " -> " << t.first << "."
       << t.second << "\n";
  for (const auto& [e, f] : m.edge_map) os << "emap " << m.id << " " << e << " -> " << f << "\n";
  for (const auto& [p, q] : m.port_map)
    os << "pmap " << m.id << " " << p.str() << " -> " << q.str() << "\n";
}

}  // namespace

std::string serialize(const Descriptor& d) {
  std::ostringstream os;
  emit_descriptor(os, d);
  return os.str();
}

std::string serialize(const CoveringMap& m) {
  std::ostringstream os;
  emit_cover(os, m);
  return os.str();
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  if (doc.has_catalog) {
    os << "catalog " << doc.catalog.id << "\n";
    for (const auto& [aid, at] : doc.catalog.atoms) {
      if (at.point) {
        os << "atom " << aid << " kind=point\n";
      } else {
        os << "atom " << aid << " kind=symmetric field=" << field_name(at.field)
           << " dim=" << at.dim << " basevol=" << to_string(at.base_volume);
        if (at.base_euler) os << " basechi=" << to_string(*at.base_euler);
        if (at.l2_profile) {
          os << " l2=";
          for (std::size_t i = 0; i < at.l2_profile->size(); ++i)
            os << (i ? "," : "") << to_string((*at.l2_profile)[i]);
        }
        os << "\n";
      }
      for (const PegClass& pc : at.pegs)
        os << "peg " << aid << " " << pc.id << " ends=" << pc.ends << "\n";
    }
  }
  for (const auto& [gid, g] : doc.groups) {
    os << "group " << gid << " deg=" << g.group.degree << "\n";
    for (const Perm& p : g.group.gens) os << "gen " << gid << " " << p.cycles() << "\n";
    for (const auto& [name, sub] : g.marked)
      for (const Perm& p : sub.gens) os << "marked " << gid << " " << name << " " << p.cycles() << "\n";
    for (const Perm& p : g.peg_action) os << "pegact " << gid << " " << p.cycles() << "\n";
  }
  for (const auto& [did, d] : doc.descriptors) emit_descriptor(os, d);
  for (const auto& [cid, m] : doc.covers) emit_cover(os, m);
  for (const auto& [cid, c] : doc.certificates) {
    os << "certificate " << cid << " a=" << c.a << " b=" << c.b << "\n";
    for (const auto& [atom, n] : c.stage1_common)
      os << "stage1 " << cid << " " << atom << " " << n << "\n";
    for (const auto& [ref, n] : c.stage1_lift)
      os << "lift " << cid << " " << ref << " " << n << "\n";
    os << "stage2 " << cid << " a=" << c.stage2_a << " b=" << c.stage2_b << "\n";
    os << "stage3 " << cid << " hash=" << c.stage3_hash << "\n";
    os << "stage4 " << cid << " c=" << c.stage4_c << " p=" << c.stage4_p
       << " q=" << c.stage4_q << " na=" << c.na << " nb=" << c.nb << "\n";
    for (const auto& [k, v] : c.summary) os << "summary " << cid << " " << k << " " << v << "\n";
  }
  return os.str();
}

}  // namespace gos
