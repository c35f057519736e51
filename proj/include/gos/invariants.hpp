#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gos/cover.hpp"
#include "gos/descriptor.hpp"
#include "gos/rational.hpp"

namespace gos {

/// Isometry types (field + dimension) of the symmetric atoms present,
/// multiplicity dropped. The quasi-isometry
/// class of the free product is this set plus the infinite-ended flag.
std::set<std::string> qi_class(const Descriptor& d, const Catalog& c);

/// L2 Betti vector of the free product: one factor per symmetric vertex
/// (profile scaled by the vertex degree) times a free group of the underlying
/// graph's rank. b0 = 0 except for the trivial group; b1 picks up
/// (#factors + rank - 1). Throws std::runtime_error on a missing profile.
std::vector<Rat> l2_betti(const Descriptor& d, const Catalog& c);

struct InvariantReport {
  std::set<std::string> qi;
  bool infinite_ended = false;
  std::optional<Rat> euler_val;
  std::map<std::string, Rat> volume_by_atom;
  std::optional<std::vector<Rat>> l2;
  std::string str() const;  // aligned text + machine-readable verdict lines
};

InvariantReport invariant_report(const Descriptor& d, const Catalog& c);

struct ObstructionVerdict {
  enum Kind { QIMismatch, CovolumeRatioMismatch, L2RatioMismatch, NoObstructionFound };
  Kind kind = NoObstructionFound;
  std::string atom;          // covolume witness: the deviating atom
  Rat ratio{0}, baseline{0};  // witness ratios (a-side over b-side)
  int k = -1, k2 = -1;       // l2 witness degrees
  std::string str() const;
  bool found() const { return kind != NoObstructionFound; }
};

/// Commensurability obstructions in fixed order: QI class, per-atom covolume
/// ratios, l2 ratios (skipped when profiles are missing).
ObstructionVerdict obstruction(const Descriptor& a, const Descriptor& b,
                               const Catalog& c);

/// Abstract commensurability of genus-g1 * genus-g2 vs genus-h1 * genus-h2:
/// true iff g1+g2 = h1+h2. Throws std::invalid_argument on genus < 2.
bool whyte_decider(int g1, int g2, int h1, int h2);

/// Common model geometry for the same pairs: true iff equal as multisets.
bool surface_rigidity_decider(int g1, int g2, int h1, int h2);

/// Volume matching for two-factor manifold descriptors: vertex volume pairs
/// equal as multisets. Throws std::invalid_argument unless each descriptor
/// has exactly two symmetric vertices.
bool volume_matching_decider(const Descriptor& a, const Descriptor& b,
                             const Catalog& c);

/// Per-atom index identity of a verified cover: N = vol(source)/vol(target)
/// for every atom of the target. Violations carry the atom and both sides.
ValidationReport claim1_index_check(const CoveringMap& m, const Descriptor& src,
                                    const Descriptor& tgt, const Catalog& c);

}  // namespace gos
