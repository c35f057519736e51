#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gos/catalog.hpp"
#include "gos/rational.hpp"

namespace gos {

/// Slot id used for the implicit slot of point vertices.
inline const std::string kPointSlot = "@";

struct PortRef {
  std::string vertex;
  std::string slot;
  int port = 1;
  auto operator<=>(const PortRef&) const = default;
  std::string str() const { return vertex + "." + slot + "." + std::to_string(port); }
};

struct VertexInstance {
  std::string id;
  std::string atom;
  long long degree = 1;
  std::vector<std::pair<std::string, std::string>> slots;  // (slotId, pegClassId), sorted
  std::optional<std::string> local_group;

  const std::string* peg_class_of(const std::string& slot_id) const;
};

struct EdgeDecl {
  std::string id;
  PortRef a, b;
};

/// A finite decorated graph of spaces.
struct Descriptor {
  std::string id;
  std::string catalog_ref;
  std::map<std::string, VertexInstance> vertices;
  std::map<std::string, EdgeDecl> edges;

  const VertexInstance* vertex(const std::string& v) const;

  /// All edge-ends of the descriptor, as (port, edgeId) sorted by port.
  std::vector<std::pair<PortRef, std::string>> darts() const;

  /// The opposite end of the edge entered through `p`; asserts `p` is an end of `e`.
  const PortRef& other_end(const EdgeDecl& e, const PortRef& p) const;
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> items;
  bool ok() const { return items.empty(); }
  void add(std::string code, std::string detail) {
    items.push_back({std::move(code), std::move(detail)});
  }
  std::string str() const;
};

/// Checks every structural invariant of `d` against `c`; empty report == valid.
ValidationReport validate(const Descriptor& d, const Catalog& c);

/// Euler characteristic of the fundamental group of the graph of spaces:
/// chi = sum over vertices of degree * basechi (1 for points) minus |E|.
/// Throws std::runtime_error if a needed basechi is undeclared.
Rat euler(const Descriptor& d, const Catalog& c);

/// Per-atom exact volume totals: sum over vertices of degree * basevol.
std::map<std::string, Rat> total_volume_by_atom(const Descriptor& d, const Catalog& c);

}  // namespace gos
