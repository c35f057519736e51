#pragma once

#include <optional>
#include <string>

#include "gos/certificate.hpp"
#include "gos/gosformat.hpp"
#include "gos/invariants.hpp"
#include "gos/leighton.hpp"
#include "gos/torsion.hpp"

namespace gos {

/// Stage 1: common vertex-space cover degrees per atom type. With declared
/// torsion the degree comes from the normal core of the intersection of the
/// marked subgroups; otherwise from the lcm of the vertex degrees.
struct Stage1Data {
  std::map<std::string, long long> common;  // atom -> common degree
  std::map<std::string, long long> lifts;   // "<descId>.<vertexId>" -> per-vertex lift
};

Stage1Data align_vertex_spaces(const Descriptor& a, const Descriptor& b,
                               const Catalog& cat, const GroupTable& groups);

struct PipelineFailure {
  std::string stage;   // "stage1" .. "stage4"
  std::string reason;  // CapExceeded | MissingGroupData | SignatureMismatch | Exhausted
  std::string detail;
};

struct PipelineResult {
  std::optional<Certificate> cert;
  Document doc;  // self-contained certificate document when cert is set
  std::optional<PipelineFailure> failure;
};

/// The four-stage commensuration: align vertex spaces, remove declared
/// torsion, match decorated trees, build a common cover. Every cover in the
/// emitted document passes verify_cover (rechecked before returning).
PipelineResult commensurate(const Descriptor& a, const Descriptor& b,
                            const Catalog& cat, const GroupTable& groups,
                            const SearchBudget& budget = {});

/// Re-verifies a certificate document from scratch: descriptor validity,
/// every cover, signature match, composition, index/volume/euler identities,
/// and the recorded summary values. Never throws; any problem returns false.
bool check_certificate(const Document& doc);

struct Section7Params {
  long long f_order = 1;      // |F|
  long long r = 1;            // divides |F| and the Delta index
  long long delta_index = 1;  // [Delta : Delta']
};

struct Section7Output {
  Document doc;  // catalog + hPrime + hSide + hSideExpanded
  long long p = 1, q = 1, rank = 0;
};

/// The residual-finiteness counterexample pair: hPrime is the bipartite
/// descriptor with q vertices of valence p and p vertices of valence q;
/// hSide is the torsion quotient whose local group reference is deliberately
/// unresolvable (its stage-2 cover cannot be built). hSideExpanded is the
/// torsion-free expansion sharing hPrime's ideal geometry.
Section7Output generate_section7(const Section7Params& params);

}  // namespace gos
