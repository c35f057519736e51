#pragma once

#include <map>
#include <string>
#include <vector>

namespace gos {

/// Serialized record of one end-to-end commensuration run. Descriptors and
/// covers it references travel in the same document; the certificate itself
/// stores only ids and exact summary values, so a checker re-derives
/// everything from scratch.
struct Certificate {
  std::string id;
  std::string a, b;  // input descriptor ids

  std::map<std::string, long long> stage1_common;  // atom id -> common vertex degree
  std::map<std::string, long long> stage1_lift;    // "<descId>.<vertexId>" -> lift degree

  // torsion-removal covers; "-" when the stage was the identity
  std::string stage2_a = "-";
  std::string stage2_b = "-";

  std::string stage3_hash;  // shared refinement signature, hex

  std::string stage4_c;  // common cover total space
  std::string stage4_p;  // cover id c -> a-side
  std::string stage4_q;  // cover id c -> b-side
  long long na = 1, nb = 1;

  std::map<std::string, std::string> summary;  // key -> value lines, canonical order

  bool operator==(const Certificate&) const = default;
};

}  // namespace gos
