#pragma once

// Shared helpers for the test suites: standard small groups and seeded
// random module generation.

#include <random>
#include <string>
#include <vector>

#include "endotriv/group.hpp"
#include "endotriv/modrep.hpp"

namespace endo::testing {

inline Group cyclic(int n, const std::string& label = "g") {
  Perm cycle(n);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return FiniteGroup::enumerate({cycle}, {label}, "C" + std::to_string(n));
}

inline Group trivial_group() { return FiniteGroup::enumerate({}, {}, "1"); }

// Regular action on {1,-1,i,-i,j,-j,k,-k} in that order.
inline Group quaternion8() {
  Perm i = {2, 3, 1, 0, 6, 7, 5, 4};
  Perm j = {4, 5, 7, 6, 1, 0, 2, 3};
  return FiniteGroup::enumerate({i, j}, {"i", "j"}, "Q8");
}

// Symmetries of a square, r the rotation, s a reflection.
inline Group dihedral8() {
  Perm r = {1, 2, 3, 0};
  Perm s = {1, 0, 3, 2};
  return FiniteGroup::enumerate({r, s}, {"r", "s"}, "D8");
}

inline Group c3xc3() {
  // Two disjoint 3-cycles on 6 points.
  Perm a = {1, 2, 0, 3, 4, 5};
  Perm b = {0, 1, 2, 4, 5, 3};
  return FiniteGroup::enumerate({a, b}, {"a", "b"}, "C3xC3");
}

inline Group c2xc2() {
  Perm a = {1, 0, 2, 3};
  Perm b = {0, 1, 3, 2};
  return FiniteGroup::enumerate({a, b}, {"a", "b"}, "C2xC2");
}

inline Group symmetric3() {
  Perm r = {1, 2, 0};
  Perm s = {1, 0, 2};
  return FiniteGroup::enumerate({r, s}, {"r", "s"}, "S3");
}

inline Group alternating4() {
  Perm a = {1, 0, 3, 2};          // (0 1)(2 3)
  Perm b = {1, 2, 0, 3};          // (0 1 2)
  return FiniteGroup::enumerate({a, b}, {"a", "b"}, "A4");
}

inline Group c6() { return cyclic(6, "a"); }

inline Group c12() {
  Perm a = {1, 2, 3, 0, 4, 5, 6};     // 4-cycle
  Perm b = {0, 1, 2, 3, 5, 6, 4};     // 3-cycle
  return FiniteGroup::enumerate({a, b}, {"a", "b"}, "C12");
}

// Random module over G: a random quotient of a free module, direct-summed
// with `free_rank` copies of the regular module, then scrambled by a random
// change of basis so the decomposition is not visible in the matrices.
inline ModuleRep random_module(const Group& g, const Field& f, std::mt19937_64& rng,
                               int cover_rank, int n_cuts, int free_rank) {
  ModuleRep free = regular_module(g, f);
  for (int i = 1; i < cover_rank; ++i) free = direct_sum(free, regular_module(g, f));
  std::uniform_int_distribution<int> coeff(0, f->q() - 1);

  Mat cuts(f, free.dim(), n_cuts);
  for (int j = 0; j < n_cuts; ++j)
    for (int i = 0; i < free.dim(); ++i)
      cuts(i, j) = static_cast<uint8_t>(coeff(rng));
  ModuleRep x = free;
  if (n_cuts > 0) {
    auto sub = submodule_generated(free, cuts);
    if (sub.sub.dim() < free.dim())
      x = quotient(free, sub.inclusion).quot;
    // A full cut leaves the zero module; fall back to the free module.
  }

  ModuleRep m = x;
  for (int i = 0; i < free_rank; ++i) m = direct_sum(m, regular_module(g, f));
  if (m.dim() == 0) m = regular_module(g, f);

  // Random basis scramble.
  Mat u(f, m.dim(), m.dim());
  while (true) {
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) u(i, j) = static_cast<uint8_t>(coeff(rng));
    if (try_inverse(u)) break;
  }
  Mat uinv = inverse(u);
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s) action.push_back(u * m.action(s) * uinv);
  return ModuleRep::make_unchecked(g, f, m.dim(), std::move(action));
}

}  // namespace endo::testing
