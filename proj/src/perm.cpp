#include "gos/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gos {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int x : img_) {
    if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x])
      throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::parse_cycles(const std::string& s, int degree) {
  std::vector<std::vector<int>> cycles;
  int max_pt = 0;
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + s);
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == ')') { ++i; break; }
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw std::invalid_argument("expected point in cycle notation: " + s);
      int pt = std::stoi(s.substr(i, j - i));
      if (pt < 1) throw std::invalid_argument("points are 1-based: " + s);
      max_pt = std::max(max_pt, pt);
      cyc.push_back(pt - 1);
      i = j;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  int n = std::max(degree, max_pt);
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& cyc : cycles)
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (img[cyc[k]] != cyc[k]) throw std::invalid_argument("point repeated across cycles: " + s);
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
  // recheck injectivity (points could repeat within one cycle)
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<int> img(img_.size());
  for (size_t x = 0; x < img.size(); ++x) img[x] = img_[rhs.img_[x]];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (size_t x = 0; x < img_.size(); ++x) img[img_[x]] = static_cast<int>(x);
  return Perm(std::move(img));
}

Perm Perm::conjugate_by(const Perm& g) const { return g * *this * g.inverse(); }

bool Perm::is_identity() const {
  for (size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) return false;
  return true;
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<bool> done(img_.size(), false);
  bool any = false;
  for (size_t start = 0; start < img_.size(); ++start) {
    if (done[start] || img_[start] == static_cast<int>(start)) continue;
    os << '(';
    size_t x = start;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << (x + 1);
      done[x] = true;
      x = img_[x];
      first = false;
    } while (x != start);
    os << ')';
    any = true;
  }
  return any ? os.str() : "()";
}

}  // namespace gos
