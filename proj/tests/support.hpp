#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bwcc/core.hpp"
#include "bwcc/solver.hpp"

namespace testsupport {

inline bwcc::PlanarConfiguration random_config(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<bwcc::Point> p(n);
    for (auto& q : p) q = {u(rng), u(rng)};
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        ok = std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) > 0.1;
      }
    }
    if (ok) return bwcc::PlanarConfiguration(std::move(p));
  }
}

inline bwcc::MassVector random_mass(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::vector<double> m(n);
  for (auto& v : m) v = u(rng);
  return bwcc::MassVector(std::move(m));
}

// Converged five-body solutions for random masses, one per hull class where
// the seeds allow.
inline std::vector<bwcc::SolveResult> five_body_sample(int count, std::uint64_t seed = 7) {
  std::vector<bwcc::SolveResult> out;
  for (int t = 0; static_cast<int>(out.size()) < count && t < 20 * count; ++t) {
    bwcc::MassVector m(bwcc::random_masses(seed, t, 5, 0.1, 10.0));
    bwcc::SolveOptions base;
    base.seed = seed;
    auto r = bwcc::find_cc(m, bwcc::trial_options(base, 5, t));
    if (r.converged && r.hull.tag != bwcc::HullTag::Collinear) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace testsupport
