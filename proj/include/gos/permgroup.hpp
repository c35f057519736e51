#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gos/perm.hpp"

namespace gos {

inline constexpr std::size_t kDefaultGroupCap = 100000;

/// Finite permutation group materialized as its full sorted element set.
struct PermGroup {
  int degree = 0;
  std::vector<Perm> gens;
  std::vector<Perm> elements;  // sorted, closed under product and inverse

  /// BFS closure of the generators. Throws std::runtime_error("order cap exceeded")
  /// past `cap` elements.
  static PermGroup closure(int degree, std::vector<Perm> gens,
                           std::size_t cap = kDefaultGroupCap);

  std::size_t order() const { return elements.size(); }
  bool contains(const Perm& p) const;
};

/// Subgroup of an ambient PermGroup, stored as a sorted element set.
struct Subgroup {
  std::vector<Perm> elements;
  std::vector<Perm> gens;

  static Subgroup from_gens(int degree, std::vector<Perm> gens,
                            std::size_t cap = kDefaultGroupCap);
  static Subgroup from_elements(std::vector<Perm> elements);
  std::size_t order() const { return elements.size(); }
  bool contains(const Perm& p) const;
};

bool is_subgroup_of(const Subgroup& h, const PermGroup& k);

/// Largest normal subgroup of K contained in H: the intersection of all
/// K-conjugates of H.
Subgroup normal_core(const PermGroup& k, const Subgroup& h);

/// Intersection of marked subgroups of K (each must be contained in K).
Subgroup intersect_all(const PermGroup& k, const std::vector<Subgroup>& subs);

/// Action of K on the left cosets of H by left multiplication.
struct CosetAction {
  long long index = 0;              // [K : H]
  std::vector<Perm> gen_images;     // image of each K generator in Sym(index)
  Subgroup kernel;                  // equals normal_core(K, H)
};

CosetAction coset_action(const PermGroup& k, const Subgroup& h);

/// Torsion data attached to a descriptor vertex: the finite local symmetry
/// group with marked subgroups and its action on the reference peg slots.
struct LocalSymmetryDatum {
  std::string id;
  PermGroup group;
  std::map<std::string, Subgroup> marked;
  std::vector<Perm> peg_action;  // one slot permutation per generator

  /// Checks containment of marked subgroups and that peg_action extends to a
  /// homomorphism of the group. Returns human-readable problems.
  std::vector<std::string> check(std::size_t cap = kDefaultGroupCap) const;
};

using GroupTable = std::map<std::string, LocalSymmetryDatum>;

}  // namespace gos
