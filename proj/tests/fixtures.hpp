#pragma once

#include <map>

#include "degenfront/kinetics.hpp"
#include "degenfront/profile.hpp"

namespace fixtures {

inline const degenfront::KineticsPair& reference() {
  static const auto k = degenfront::KineticsPair::quadratic_cubic(1.0, 0.625);
  return k;
}

/// Reference front at phi(0) = 1/2, cached per grid size.
inline const degenfront::FrontProfile& front(std::size_t n) {
  static std::map<std::size_t, degenfront::FrontProfile> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, degenfront::solve_profile(reference(), 0.5, {}, n)).first;
  return it->second;
}

}  // namespace fixtures
