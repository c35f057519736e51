#include "gos/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace gos {

namespace {

std::vector<Perm> bfs_closure(int degree, const std::vector<Perm>& gens, std::size_t cap) {
  std::set<Perm> seen{Perm::identity(degree)};
  std::deque<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    Perm g = frontier.front();
    frontier.pop_front();
    for (const Perm& s : gens) {
      for (const Perm& next : {s * g, s.inverse() * g}) {
        if (seen.insert(next).second) {
          if (seen.size() > cap) throw std::runtime_error("order cap exceeded");
          frontier.push_back(next);
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool sorted_contains(const std::vector<Perm>& v, const Perm& p) {
  return std::binary_search(v.begin(), v.end(), p);
}

}  // namespace

PermGroup PermGroup::closure(int degree, std::vector<Perm> gens, std::size_t cap) {
  for (const Perm& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
  PermGroup out;
  out.degree = degree;
  out.elements = bfs_closure(degree, gens, cap);
  out.gens = std::move(gens);
  return out;
}

bool PermGroup::contains(const Perm& p) const { return sorted_contains(elements, p); }

Subgroup Subgroup::from_gens(int degree, std::vector<Perm> gens, std::size_t cap) {
  Subgroup out;
  out.elements = bfs_closure(degree, gens, cap);
  out.gens = std::move(gens);
  return out;
}

Subgroup Subgroup::from_elements(std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup out;
  out.elements = std::move(elements);
  out.gens = out.elements;  // element set doubles as a generating set
  return out;
}

bool Subgroup::contains(const Perm& p) const { return sorted_contains(elements, p); }

bool is_subgroup_of(const Subgroup& h, const PermGroup& k) {
  return std::includes(k.elements.begin(), k.elements.end(), h.elements.begin(),
                       h.elements.end());
}

Subgroup normal_core(const PermGroup& k, const Subgroup& h) {
  std::vector<Perm> core = h.elements;
  for (const Perm& g : k.elements) {
    // intersect the running core with h^g = { x : g^-1 x g in h }
    const Perm gi = g.inverse();
    std::vector<Perm> next;
    for (const Perm& x : core)
      if (h.contains(gi * x * g)) next.push_back(x);
    core = std::move(next);
    if (core.size() == 1) break;  // trivial already
  }
  return Subgroup::from_elements(std::move(core));
}

Subgroup intersect_all(const PermGroup& k, const std::vector<Subgroup>& subs) {
  if (subs.empty()) return Subgroup::from_elements(k.elements);
  std::vector<Perm> acc = subs[0].elements;
  for (std::size_t i = 1; i < subs.size(); ++i) {
    std::vector<Perm> next;
    std::set_intersection(acc.begin(), acc.end(), subs[i].elements.begin(),
                          subs[i].elements.end(), std::back_inserter(next));
    acc = std::move(next);
  }
  return Subgroup::from_elements(std::move(acc));
}

CosetAction coset_action(const PermGroup& k, const Subgroup& h) {
  if (!is_subgroup_of(h, k)) throw std::invalid_argument("H is not a subgroup of K");
  // enumerate left cosets gH, represented by their minimal element
  auto rep = [&](const Perm& g) {
    Perm best = g;
    for (const Perm& x : h.elements) best = std::min(best, g * x);
    return best;
  };
  std::vector<Perm> reps;
  std::map<Perm, int> index_of;
  std::deque<Perm> frontier;
  Perm r0 = rep(Perm::identity(k.degree));
  reps.push_back(r0);
  index_of[r0] = 0;
  frontier.push_back(r0);
  while (!frontier.empty()) {
    Perm r = frontier.front();
    frontier.pop_front();
    for (const Perm& s : k.gens) {
      Perm t = rep(s * r);
      if (!index_of.count(t)) {
        index_of[t] = static_cast<int>(reps.size());
        reps.push_back(t);
        frontier.push_back(t);
      }
    }
  }
  CosetAction act;
  act.index = static_cast<long long>(reps.size());
  for (const Perm& s : k.gens) {
    std::vector<int> img(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) img[i] = index_of.at(rep(s * reps[i]));
    act.gen_images.push_back(Perm(std::move(img)));
  }
  // kernel: elements acting trivially on all cosets
  std::vector<Perm> kern;
  for (const Perm& g : k.elements) {
    bool fixes = true;
    for (const Perm& r : reps)
      if (rep(g * r) != r) {
        fixes = false;
        break;
      }
    if (fixes) kern.push_back(g);
  }
  act.kernel = Subgroup::from_elements(std::move(kern));
  return act;
}

std::vector<std::string> LocalSymmetryDatum::check(std::size_t cap) const {
  std::vector<std::string> bad;
  for (const auto& [name, sub] : marked)
    if (!is_subgroup_of(sub, group))
      bad.push_back("marked subgroup " + name + " is not contained in the group");
  if (!peg_action.empty()) {
    if (peg_action.size() != group.gens.size()) {
      bad.push_back("peg action must assign one permutation per generator");
      return bad;
    }
    int slot_deg = peg_action.front().degree();
    for (const Perm& p : peg_action)
      if (p.degree() != slot_deg) bad.push_back("peg action degree mismatch");
    // the assignment extends to a homomorphism iff, in the closure of the
    // paired generators, no group element is paired with two slot images
    try {
      std::map<Perm, Perm> image;
      std::deque<std::pair<Perm, Perm>> frontier;
      auto push = [&](const Perm& g, const Perm& s) {
        auto it = image.find(g);
        if (it == image.end()) {
          image.emplace(g, s);
          frontier.push_back({g, s});
          if (image.size() > cap) throw std::runtime_error("order cap exceeded");
          return true;
        }
        if (it->second != s) bad.push_back("peg action does not extend to a homomorphism");
        return false;
      };
      push(Perm::identity(group.degree), Perm::identity(slot_deg));
      while (!frontier.empty() && bad.empty()) {
        auto [g, s] = frontier.front();
        frontier.pop_front();
        for (std::size_t i = 0; i < group.gens.size(); ++i) {
          push(group.gens[i] * g, peg_action[i] * s);
          push(group.gens[i].inverse() * g, peg_action[i].inverse() * s);
        }
      }
    } catch (const std::runtime_error& e) {
      bad.push_back(e.what());
    }
  }
  return bad;
}

}  // namespace gos
