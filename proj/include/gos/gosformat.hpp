#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "gos/catalog.hpp"
#include "gos/certificate.hpp"
#include "gos/cover.hpp"
#include "gos/descriptor.hpp"
#include "gos/permgroup.hpp"

namespace gos {

/// One parsed GOS document: a catalog plus any number of descriptors, local
/// symmetry groups, covering maps, and certificates.
struct Document {
  Catalog catalog;
  bool has_catalog = false;
  std::map<std::string, Descriptor> descriptors;
  GroupTable groups;
  std::map<std::string, CoveringMap> covers;
  std::map<std::string, Certificate> certificates;

  const Descriptor& descriptor(const std::string& id) const;  // throws if absent
};

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(col_) +
                           ": " + what),
        line(line_),
        col(col_) {}
};

/// Parses a GOS document. Structural references (atoms, pegs, ports, duplicate
/// ids, port ranges) are checked here with line/column diagnostics; deeper
/// invariants are left to validate()/verify_cover().
Document parse_document(const std::string& text);

/// Canonical serialization: sections ordered catalog, groups, descriptors,
/// covers, certificates; every block sorted lexicographically by id; edge ends
/// ordered with the smaller port first. parse(serialize(doc)) round-trips
/// byte-exactly.
std::string serialize(const Document& doc);

std::string serialize(const Descriptor& d);
std::string serialize(const CoveringMap& m);

}  // namespace gos
