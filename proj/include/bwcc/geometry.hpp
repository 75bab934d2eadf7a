#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bwcc/core.hpp"

namespace bwcc {

enum class HullTag {
  Collinear,
  TriangularHull,
  QuadrilateralHull,
  StrictlyConvex,
  // Five or more extreme points but not all of them (n >= 6 only).
  Polygonal,
};

const char* to_string(HullTag tag) noexcept;
HullTag hull_tag_from_string(const std::string& name);

struct HullClass {
  HullTag tag = HullTag::Collinear;
  // Canonical body k is original body relabeling[k].
  std::vector<std::size_t> relabeling;
  // Extreme points, counterclockwise, original indices.
  std::vector<std::size_t> boundary;
};

// Convex hull sweep with the collinearity threshold (points on a hull edge
// are not extreme). For five bodies the relabeling realizes the usual
// numbering of each class:
//   strictly convex  - counterclockwise cyclic order;
//   quadrilateral    - hull q1..q4 counterclockwise, interior body q5;
//   triangular       - hull q1 q2 q3 with q1, q2, q5, q4 convex counterclockwise.
HullClass classify_hull(const PlanarConfiguration& config);

// Applies the canonical relabeling to masses and positions.
CentralConfiguration relabel(const CentralConfiguration& cc, const std::vector<std::size_t>& order);

enum class Quadrant { I, II, III, IV };

struct QuadrantMembership {
  Quadrant quadrant = Quadrant::I;  // closed quadrant
  bool interior = false;            // false when within the boundary band
};

struct QuadrantReport {
  std::size_t p = 0;
  std::size_t q = 0;
  // One entry per body; entries p and q are boundary points.
  std::vector<QuadrantMembership> bodies;
  bool verdict = true;
};

// Frame: x-axis along p -> q, y-axis the perpendicular bisector. Fails
// (verdict false) when exactly one of I° u III° and II° u IV° holds bodies.
QuadrantReport perpendicular_bisector_check(const PlanarConfiguration& config,
                                            const MassVector& masses, std::size_t p,
                                            std::size_t q);

// All pairs.
bool perpendicular_bisector_all(const PlanarConfiguration& config, const MassVector& masses);

// Line through `body` at `angle` and the unit circle around it. The domains
// (upper half disk + lower outside) and (upper outside + lower half disk) must
// be both empty or both occupied. Requires lambda = M.
bool disk_sector_check(const CentralConfiguration& cc, std::size_t body, double angle);

// 16 equally spaced directions plus every line through two bodies.
bool disk_sector_all(const CentralConfiguration& cc);

struct ExteriorResult {
  bool hypothesis = false;  // r_hi <= r_hk and r_hj <= r_hk
  bool exterior = false;    // q_k strictly outside the triangle q_h q_i q_j
};

// Throws Integrity if the distance hypothesis holds without exteriority.
ExteriorResult exterior_test(const PlanarConfiguration& config, std::size_t h, std::size_t i,
                             std::size_t j, std::size_t k);

}  // namespace bwcc
