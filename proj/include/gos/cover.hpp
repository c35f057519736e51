#pragma once

#include <map>
#include <string>
#include <vector>

#include "gos/descriptor.hpp"
#include "gos/perm.hpp"

namespace gos {

/// Explicit finite covering of descriptors: all vertex/slot/edge/port data is
/// stored, never recovered.
struct CoveringMap {
  std::string id;
  std::string source;
  std::string target;
  long long total_degree = 1;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, long long> local_degree;
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> slot_map;
  std::map<std::string, std::string> edge_map;
  std::map<PortRef, PortRef> port_map;
};

/// A constructed cover together with its total space.
struct BuiltCover {
  Descriptor total;
  CoveringMap map;
};

/// Checks every CoveringMap invariant of m : src -> tgt. Empty report means
/// the map is a genuine degree-N covering.
ValidationReport verify_cover(const CoveringMap& m, const Descriptor& src,
                              const Descriptor& tgt, const Catalog& cat);

/// Composition A -> B -> C; total degree multiplies.
CoveringMap compose(const CoveringMap& p, const CoveringMap& q, const Descriptor& a);

/// Identity covering of a descriptor.
CoveringMap identity_cover(const Descriptor& d, const std::string& id = "id");

/// One connected component of a fiber product, with its two projections.
struct FiberComponent {
  Descriptor total;
  CoveringMap to_a;
  CoveringMap to_b;
};

/// Fiber product of p : A -> D and q : B -> D, split into connected components
/// in canonical order (lexicographically least vertex pair first). Requires all
/// local degrees of p and q to be 1; throws std::invalid_argument otherwise.
std::vector<FiberComponent> fiber_product(const CoveringMap& p, const Descriptor& a,
                                          const CoveringMap& q, const Descriptor& b,
                                          const Descriptor& d, const Catalog& cat);

/// Permutation voltage assignment on the edges of a descriptor; edges absent
/// from the map carry the identity.
struct VoltageAssignment {
  int degree = 1;
  std::map<std::string, Perm> voltages;
};

/// Derived cover of the permutation voltage assignment, restricted to the
/// component of the least vertex. All local degrees are 1. `regular` reports
/// whether the monodromy group acts regularly on the restricted fiber.
struct DerivedCover {
  BuiltCover cover;
  bool regular = false;
};

DerivedCover graph_regular_cover(const Descriptor& d, const Catalog& cat,
                                 const VoltageAssignment& va);

/// Deck transformations of a cover: automorphisms of the total space that
/// commute with the projection.
struct DeckAction {
  std::vector<std::map<std::string, std::string>> vertex_perms;  // full deck group
  bool regular = false;  // transitive on each vertex fiber
};

/// Exhaustive deck-group computation; intended for small covers.
DeckAction deck_action(const BuiltCover& c, const Descriptor& tgt, const Catalog& cat);

}  // namespace gos
