#pragma once

#include <compare>
#include <string>
#include <vector>

namespace gos {

/// Permutation of {1..n}, stored as 0-based image table.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int n);

  /// Parses cycle notation, e.g. "(1 2 3)(4 5)"; "()" is the identity.
  /// Degree is the largest moved point unless `degree` forces a larger one.
  static Perm parse_cycles(const std::string& s, int degree = 0);

  int degree() const { return static_cast<int>(img_.size()); }
  int apply(int x) const { return img_[x]; }  // 0-based

  Perm operator*(const Perm& rhs) const;  // (a*b)(x) = a(b(x))
  Perm inverse() const;
  Perm conjugate_by(const Perm& g) const;  // g * this * g^-1

  bool is_identity() const;
  std::string cycles() const;

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> img_;
};

}  // namespace gos
