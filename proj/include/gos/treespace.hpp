#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gos/cover.hpp"
#include "gos/descriptor.hpp"

namespace gos {

/// Stable partition of the (vertex, slot)-incidence structure of a descriptor
/// under iterated neighborhood refinement. Initial colors: atom id for vertex
/// nodes, peg class id for slot nodes (point vertices contribute an implicit
/// "@" slot node). Vertex cover degree is deliberately not a color.
struct RefinementSignature {
  struct ClassInfo {
    std::string kind;        // "v" or "s"
    std::string decoration;  // atom id / peg class id
    long long count = 0;     // n_i
  };
  int rounds = 0;  // rounds until stable
  std::vector<ClassInfo> classes;
  std::vector<std::vector<long long>> degree_matrix;  // r_ij, neighbor counts
  std::map<std::string, int> node_class;  // "v:<vid>" or "s:<vid>.<slot>" -> class

  /// Canonical text of classes + degree matrix (counts excluded: two quotients
  /// of one tree differ in counts but share everything hashed).
  std::string canonical() const;
  std::uint64_t hash() const;  // FNV-1a 64 over canonical()
  std::string hash_hex() const;
};

RefinementSignature refine(const Descriptor& d, const Catalog& c);

struct GeometryMatch {
  bool yes = false;
  RefinementSignature shared;       // = refine(a) when yes
  int witness_radius = -1;          // refinement round that split the sides
  std::string witness_class;        // description of a one-sided class
};

/// Decides whether a and b decorate the same locally finite tree, by joint
/// refinement of the disjoint union: Yes iff every stable class meets both
/// descriptors. Throws std::invalid_argument on catalog mismatch.
GeometryMatch same_ideal_geometry(const Descriptor& a, const Descriptor& b,
                                  const Catalog& c);

/// Stable joint-refinement classes of the disjoint union of a and b, keyed
/// "a:v:<vid>", "a:s:<vid>.<slot>", "b:v:<vid>", ... Two nodes share a class
/// iff no refinement round distinguishes them.
std::map<std::string, int> joint_classes(const Descriptor& a, const Descriptor& b,
                                         const Catalog& c);

/// Lazy decorated universal cover of the underlying graph of a descriptor.
/// Nodes are addressed by non-backtracking walks from a basepoint, written as
/// the sequence of departing darts.
using Address = std::vector<PortRef>;

struct DecoratedTree {
  const Descriptor* base = nullptr;
  const Catalog* cat = nullptr;
  std::string root;  // basepoint vertex; defaults to the least vertex id

  DecoratedTree(const Descriptor& d, const Catalog& c, std::string basepoint = "");
  /// base vertex reached by an address; throws std::invalid_argument when the
  /// walk is not realizable or backtracks
  std::string vertex_at(const Address& a) const;
};

Address parse_address(const std::string& s);  // "v.s.1/w.t.2"; "" is the root
std::string address_str(const Address& a);

struct BallNode {
  std::string atom;
  std::string entry_peg;  // peg class of the arrival port; "" at the center
  long long degree = 1;
  Address address;  // absolute address of this node
  std::vector<BallNode> children;
};

struct BallView {
  int radius = 0;
  BallNode root;
  /// canonical rooted string; compares (atom, entry_peg) decorations only
  std::string canonical() const;
};

BallView ball(const DecoratedTree& t, const Address& center, int radius);

/// Decoration-preserving rooted isomorphism of two ball views.
bool ball_isomorphic(const BallView& x, const BallView& y);

/// Partial map between two decorated trees, given on finitely many nodes.
struct PartialTreeMap {
  std::vector<std::pair<Address, Address>> pairs;
};

/// True iff around every domain node there is a decoration-preserving
/// isomorphism of R-balls agreeing with f on all domain nodes in the ball.
bool locally_realizable(const DecoratedTree& ta, const DecoratedTree& tb,
                        const PartialTreeMap& f, int radius);

}  // namespace gos
