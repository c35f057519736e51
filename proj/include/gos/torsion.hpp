#pragma once

#include "gos/cover.hpp"
#include "gos/permgroup.hpp"

namespace gos {

/// Finite cover killing all declared local symmetry groups. The assembled
/// quotient Q is the direct product of the vertex groups (free-part
/// generators die); cover vertices over v are the cosets Q / G_v, with local
/// degree |G_v| and one edge lift per element of Q. Every vertex of the
/// result carries a trivial local group.
///
/// Throws std::invalid_argument when a referenced group id is missing from
/// the table or a point vertex declares a nontrivial group, and
/// std::runtime_error("order cap exceeded") when |Q| > cap.
BuiltCover torsion_free_cover(const Descriptor& d, const Catalog& cat,
                              const GroupTable& groups,
                              std::size_t cap = kDefaultGroupCap);

}  // namespace gos
