#include "gos/catalog.hpp"

#include <algorithm>

namespace gos {

std::string field_name(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
    case Field::Ca: return "Ca";
  }
  return "?";
}

std::optional<Field> field_from_name(const std::string& s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "H") return Field::H;
  if (s == "Ca") return Field::Ca;
  return std::nullopt;
}

int AtomType::real_dim() const {
  if (point) return 0;
  switch (field) {
    case Field::R: return dim;
    case Field::C: return 2 * dim;
    case Field::H: return 4 * dim;
    case Field::Ca: return 8 * dim;
  }
  return dim;
}

std::optional<Rat> AtomType::euler() const {
  if (point) return Rat(1);
  if (base_euler) return base_euler;
  if (real_dim() % 2 == 1) return Rat(0);  // closed odd-dimensional convention
  return std::nullopt;
}

const PegClass* AtomType::peg(const std::string& peg_id) const {
  for (const auto& p : pegs)
    if (p.id == peg_id) return &p;
  return nullptr;
}

const AtomType* Catalog::atom(const std::string& atom_id) const {
  auto it = atoms.find(atom_id);
  return it == atoms.end() ? nullptr : &it->second;
}

std::vector<std::string> check_catalog(const Catalog& c) {
  std::vector<std::string> bad;
  for (const auto& [id, a] : c.atoms) {
    if (a.point) {
      if (!a.pegs.empty()) bad.push_back("atom " + id + ": point atom with peg classes");
      if (a.base_volume != Rat(1)) bad.push_back("atom " + id + ": point atom basevol != 1");
      if (a.base_euler && *a.base_euler != Rat(1))
        bad.push_back("atom " + id + ": point atom basechi != 1");
    } else {
      if (a.pegs.empty()) bad.push_back("atom " + id + ": symmetric atom without peg class");
      if (a.real_dim() % 2 == 0 && !a.base_euler)
        bad.push_back("atom " + id + ": even-dimensional symmetric atom missing basechi");
    }
    if (a.base_volume <= Rat(0)) bad.push_back("atom " + id + ": basevol not positive");
    for (const auto& p : a.pegs)
      if (p.ends < 1) bad.push_back("atom " + id + ": peg " + p.id + " ends < 1");
    if (a.l2_profile) {
      Rat alt(0);
      int sign = 1;
      for (const auto& b : *a.l2_profile) {
        if (b < Rat(0)) bad.push_back("atom " + id + ": negative l2 entry");
        alt += Rat(sign) * b;
        sign = -sign;
      }
      auto chi = a.euler();
      if (chi && alt != *chi)
        bad.push_back("atom " + id + ": l2 alternating sum " + to_string(alt) +
                      " != basechi " + to_string(*chi));
    }
  }
  return bad;
}

}  // namespace gos
