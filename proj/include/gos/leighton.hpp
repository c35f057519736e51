#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gos/cover.hpp"
#include "gos/descriptor.hpp"
#include "gos/rational.hpp"
#include "gos/treespace.hpp"

namespace gos {

/// A common finite cover of two descriptors with both projections.
struct CommonCover {
  Descriptor c;
  CoveringMap p;  // c -> a
  CoveringMap q;  // c -> b
  long long na = 1, nb = 1;
};

struct SearchBudget {
  long long max_degree_pairs = 8;
  long long max_nodes = 2000000;
  double time_limit_s = 60.0;
  unsigned long long random_seed = 0;  // recorded; the search itself is ordered
};

struct LadderEntry {
  long long na = 0, nb = 0;
  long long nodes = 0;     // search nodes spent on this degree pair
  bool complete = false;   // true when the pair was exhausted (no cover there)
};

struct ExhaustedReport {
  std::vector<LadderEntry> ladder;
  std::string reason;  // "degree ladder exhausted" / "node budget" / "time limit"
  unsigned long long random_seed = 0;
  std::string str() const;
};

struct CommonCoverResult {
  std::optional<CommonCover> cover;
  ExhaustedReport report;  // filled when no cover was found
};

/// Least (N_a, N_b) satisfying the per-refinement-class volume constraints
/// N_a * (degree sum of class i in a) = N_b * (degree sum in b); nullopt when
/// the per-class ratios disagree (no common cover can exist).
std::optional<std::pair<long long, long long>> minimal_degree_pair(const Descriptor& a,
                                                                   const Descriptor& b,
                                                                   const Catalog& c);

/// Backtracking construction of a connected decoration-preserving common
/// cover, iterating over multiples of the minimal degree pair. Deterministic.
/// Throws std::invalid_argument when same_ideal_geometry(a, b) is No.
CommonCoverResult common_cover(const Descriptor& a, const Descriptor& b,
                               const Catalog& cat, const SearchBudget& budget = {});

struct WitnessReport {
  long long na = 1, nb = 1;
  struct VolumeLine {
    std::string atom;
    Rat vc, va, vb;  // vc = na*va = nb*vb
  };
  std::vector<VolumeLine> volumes;
  std::optional<Rat> euler_c, euler_a, euler_b;
  bool ok = false;
  std::string str() const;
};

WitnessReport commensurating_witness(const CommonCover& cc, const Descriptor& a,
                                     const Descriptor& b, const Catalog& cat);

}  // namespace gos
