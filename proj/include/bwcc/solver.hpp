#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bwcc/core.hpp"
#include "bwcc/geometry.hpp"
#include "bwcc/linalg.hpp"

namespace bwcc {

// Where random starting positions are drawn.
enum class SeedShape {
  Disk,           // uniform in the unit disk
  Ring,           // jittered regular polygon
  Quadrilateral,  // jittered square, remaining bodies near the center
  Triangular,     // jittered triangle, remaining bodies inside
};

const char* to_string(SeedShape shape) noexcept;

struct SolveOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  double damping = 1e-3;
  double min_separation = 0.05;
  std::uint64_t seed = 0;
  SeedShape shape = SeedShape::Disk;

  void validate() const;
};

struct SolveResult {
  CentralConfiguration cc;
  int iterations = 0;
  bool converged = false;
  HullClass hull;
};

// sum_{i<j} m_i m_j (1/r_ij + r_ij^2 / 2)
double amended_potential(const MassVector& masses, const PlanarConfiguration& config);

// Gradient of the amended potential: m_i sum_j m_j (S_ij - 1)(q_j - q_i).
std::vector<Point> amended_gradient(const MassVector& masses, const PlanarConfiguration& config);

// Jacobian of a_i = sum_j m_j (S_ij - 1)(q_j - q_i) with respect to the
// positions, in (x_1, y_1, x_2, ...) order. Row i of the Hessian of the
// amended potential is m_i times row i of this matrix.
Matrix acceleration_jacobian(const MassVector& masses, const PlanarConfiguration& config);

// Deterministic random start for the given options.
PlanarConfiguration seed_configuration(const MassVector& masses, const SolveOptions& options);

// Damped Newton iteration from a given start.
SolveResult solve_from(const MassVector& masses, const PlanarConfiguration& start,
                       const SolveOptions& options);

SolveResult find_cc(const MassVector& masses, const SolveOptions& options);

// Solves for a configuration in which bodies (a, b, c) are collinear, letting
// the mass of `free_body` vary. The returned masses carry the adjusted value.
SolveResult solve_collinear_triple(const MassVector& masses, std::array<std::size_t, 3> triple,
                                   std::size_t free_body, const PlanarConfiguration& start,
                                   const SolveOptions& options);

// Collinear central configuration with bodies ordered along the x-axis as
// ordering[0], ordering[1], ...
SolveResult moulton_collinear(const MassVector& masses, const std::vector<std::size_t>& ordering,
                              const SolveOptions& options = {});

enum class KnownConfiguration { Equilateral, Pentagon, SquareCenter };

KnownConfiguration known_from_string(const std::string& name);

// Exact normalized anchors; `parameter` is the central mass of SquareCenter.
CentralConfiguration known_configuration(KnownConfiguration which, double parameter = 1.0);

// Merges results whose sorted (mass pair, distance) multisets agree to 1e-8
// relative; keeps the lowest residual representative in first-seen order.
std::vector<SolveResult> dedup(const std::vector<SolveResult>& results);

// Options of trial t in a campaign: mixed seed and, for five or more bodies,
// seed shapes cycling Disk, Ring, Quadrilateral, Triangular.
SolveOptions trial_options(const SolveOptions& base, std::size_t n, std::uint64_t trial);

// Runs `trials` independent solves on up to `threads` threads. Results are in
// trial order regardless of scheduling.
std::vector<SolveResult> solve_campaign(const MassVector& masses, int trials,
                                        const SolveOptions& base, unsigned threads);

// Masses log-uniform in [lo, hi], reproducible from (seed, stream).
std::vector<double> random_masses(std::uint64_t seed, std::uint64_t stream, std::size_t n,
                                  double lo, double hi);

}  // namespace bwcc
