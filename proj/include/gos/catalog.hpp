#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gos/rational.hpp"

namespace gos {

enum class Field { R, C, H, Ca };

std::string field_name(Field f);
std::optional<Field> field_from_name(const std::string& s);

/// A marked-point class on an atom; every lift of such a point carries
/// exactly `ends` edge-ends.
struct PegClass {
  std::string id;
  int ends = 1;
};

/// A vertex-space isometry type: either a point or a rank-1 symmetric
/// reference with exact (abstract-unit) volume data.
struct AtomType {
  std::string id;
  bool point = false;
  Field field = Field::R;  // symmetric only
  int dim = 2;             // symmetric only
  Rat base_volume{1};
  std::optional<Rat> base_euler;
  std::optional<std::vector<Rat>> l2_profile;
  std::vector<PegClass> pegs;  // kept sorted by id

  int real_dim() const;

  /// Declared Euler characteristic, with the conventions: 1 for points,
  /// 0 for odd real dimension when undeclared.
  std::optional<Rat> euler() const;

  const PegClass* peg(const std::string& peg_id) const;
};

struct Catalog {
  std::string id;
  std::map<std::string, AtomType> atoms;

  const AtomType* atom(const std::string& atom_id) const;
};

/// Atom-level invariant check (peg emptiness/volume conventions for points,
/// l2 alternating-sum consistency, at least one peg class on symmetric atoms).
std::vector<std::string> check_catalog(const Catalog& c);

}  // namespace gos
