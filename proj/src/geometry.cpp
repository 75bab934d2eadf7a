#include "bwcc/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bwcc/error.hpp"

namespace bwcc {

const char* to_string(HullTag tag) noexcept {
  switch (tag) {
    case HullTag::Collinear: return "collinear";
    case HullTag::TriangularHull: return "triangular";
    case HullTag::QuadrilateralHull: return "quadrilateral";
    case HullTag::StrictlyConvex: return "strictly_convex";
    case HullTag::Polygonal: return "polygonal";
  }
  return "unknown";
}

HullTag hull_tag_from_string(const std::string& name) {
  for (HullTag t : {HullTag::Collinear, HullTag::TriangularHull, HullTag::QuadrilateralHull,
                    HullTag::StrictlyConvex, HullTag::Polygonal}) {
    if (name == to_string(t)) return t;
  }
  throw Error(ErrorCode::Configuration, "unknown hull class '" + name + "'");
}

namespace {

// Andrew's monotone chain, keeping only turns larger than the threshold.
std::vector<std::size_t> extreme_points(const PlanarConfiguration& config, double threshold) {
  const std::size_t n = config.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (config[a].x != config[b].x) return config[a].x < config[b].x;
    return config[a].y < config[b].y;
  });
  std::vector<std::size_t> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && config.delta(hull[k - 2], hull[k - 1], idx[i]) <= threshold) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && config.delta(hull[k - 2], hull[k - 1], idx[i]) <= threshold) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  return hull;
}

std::vector<std::size_t> rotate_to_min(std::vector<std::size_t> cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

// Smallest turn along the closed polygon a -> b -> c -> d.
double min_turn(const PlanarConfiguration& config, const std::array<std::size_t, 4>& poly) {
  double worst = INFINITY;
  for (std::size_t v = 0; v < 4; ++v) {
    worst = std::min(worst, config.delta(poly[v], poly[(v + 1) % 4], poly[(v + 2) % 4]));
  }
  return worst;
}

std::vector<std::size_t> triangular_numbering(const PlanarConfiguration& config,
                                              const std::vector<std::size_t>& hull,
                                              double threshold) {
  std::vector<std::size_t> inner;
  for (std::size_t i = 0; i < 5; ++i) {
    if (std::find(hull.begin(), hull.end(), i) == hull.end()) inner.push_back(i);
  }
  std::vector<std::size_t> best;
  double best_score = -INFINITY;
  bool best_valid = false;
  for (std::size_t shift = 0; shift < 3; ++shift) {
    const std::size_t q1 = hull[shift];
    const std::size_t q2 = hull[(shift + 1) % 3];
    const std::size_t q3 = hull[(shift + 2) % 3];
    for (int swap = 0; swap < 2; ++swap) {
      const std::size_t q4 = inner[swap];
      const std::size_t q5 = inner[1 - swap];
      const double score = min_turn(config, {q1, q2, q5, q4});
      const bool valid = score > threshold;
      std::vector<std::size_t> cand{q1, q2, q3, q4, q5};
      const bool better = valid != best_valid
                              ? valid
                              : (valid ? cand < best : score > best_score);
      if (best.empty() || better) {
        best = std::move(cand);
        best_score = score;
        best_valid = valid;
      }
    }
  }
  return best;
}

}  // namespace

HullClass classify_hull(const PlanarConfiguration& config) {
  const std::size_t n = config.size();
  HullClass out;
  out.relabeling.resize(n);
  std::iota(out.relabeling.begin(), out.relabeling.end(), 0);
  if (n < 3) return out;

  const double threshold = collinear_threshold(config);
  std::vector<std::size_t> hull = extreme_points(config, threshold);
  if (hull.size() < 3) {
    out.boundary = hull;
    return out;
  }
  hull = rotate_to_min(std::move(hull));
  out.boundary = hull;

  if (hull.size() == n) {
    out.tag = HullTag::StrictlyConvex;
    out.relabeling = hull;
  } else if (hull.size() == 3) {
    out.tag = HullTag::TriangularHull;
  } else if (hull.size() == 4) {
    out.tag = HullTag::QuadrilateralHull;
  } else {
    out.tag = HullTag::Polygonal;
  }
  if (n != 5 || out.tag == HullTag::StrictlyConvex) return out;

  if (out.tag == HullTag::QuadrilateralHull) {
    out.relabeling = hull;
    for (std::size_t i = 0; i < 5; ++i) {
      if (std::find(hull.begin(), hull.end(), i) == hull.end()) out.relabeling.push_back(i);
    }
  } else {
    out.relabeling = triangular_numbering(config, hull, threshold);
  }
  return out;
}

CentralConfiguration relabel(const CentralConfiguration& cc, const std::vector<std::size_t>& order) {
  return CentralConfiguration{cc.masses.permuted(order), cc.configuration.permuted(order),
                              cc.lambda, cc.gradient_residual, cc.normalized};
}

QuadrantReport perpendicular_bisector_check(const PlanarConfiguration& config,
                                            const MassVector& masses, std::size_t p,
                                            std::size_t q) {
  const std::size_t n = config.size();
  if (masses.size() != n) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
  if (p == q || p >= n || q >= n) throw Error(ErrorCode::Dimension, "invalid body pair");

  const double band = 1e-10 * config.scale();
  const double mx = 0.5 * (config[p].x + config[q].x);
  const double my = 0.5 * (config[p].y + config[q].y);
  const double len = config.distance(p, q);
  const double ex = (config[q].x - config[p].x) / len;
  const double ey = (config[q].y - config[p].y) / len;

  QuadrantReport report{p, q, std::vector<QuadrantMembership>(n), true};
  bool odd = false;   // I° u III°
  bool even = false;  // II° u IV°
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = config[k].x - mx;
    const double dy = config[k].y - my;
    const double u = dx * ex + dy * ey;
    const double v = -dx * ey + dy * ex;
    QuadrantMembership& m = report.bodies[k];
    if (u >= 0.0) {
      m.quadrant = v >= 0.0 ? Quadrant::I : Quadrant::IV;
    } else {
      m.quadrant = v >= 0.0 ? Quadrant::II : Quadrant::III;
    }
    m.interior = k != p && k != q && std::abs(u) > band && std::abs(v) > band;
    if (!m.interior) continue;
    if (m.quadrant == Quadrant::I || m.quadrant == Quadrant::III) {
      odd = true;
    } else {
      even = true;
    }
  }
  report.verdict = odd == even;
  return report;
}

bool perpendicular_bisector_all(const PlanarConfiguration& config, const MassVector& masses) {
  for (std::size_t p = 0; p < config.size(); ++p) {
    for (std::size_t q = p + 1; q < config.size(); ++q) {
      if (!perpendicular_bisector_check(config, masses, p, q).verdict) return false;
    }
  }
  return true;
}

bool disk_sector_check(const CentralConfiguration& cc, std::size_t body, double angle) {
  if (!cc.normalized || std::abs(cc.lambda - cc.masses.total()) > 1e-12 * cc.masses.total()) {
    throw Error(ErrorCode::NormalizationRequired,
                "the disk sector test needs the lambda = M normalization");
  }
  const PlanarConfiguration& config = cc.configuration;
  if (body >= config.size()) throw Error(ErrorCode::Dimension, "invalid body index");

  const double band = 1e-10 * config.scale();
  const double ex = std::cos(angle);
  const double ey = std::sin(angle);
  bool positive = false;  // upper half disk, lower outside
  bool negative = false;  // upper outside, lower half disk
  for (std::size_t k = 0; k < config.size(); ++k) {
    if (k == body) continue;
    const double dx = config[k].x - config[body].x;
    const double dy = config[k].y - config[body].y;
    const double v = -dx * ey + dy * ex;
    const double r = std::hypot(dx, dy);
    if (std::abs(v) <= band || std::abs(r - 1.0) <= 1e-10) continue;
    const bool inside = r < 1.0;
    const bool upper = v > 0.0;
    if (inside == upper) {
      positive = true;
    } else {
      negative = true;
    }
  }
  return positive == negative;
}

bool disk_sector_all(const CentralConfiguration& cc) {
  const PlanarConfiguration& config = cc.configuration;
  for (std::size_t b = 0; b < config.size(); ++b) {
    for (int k = 0; k < 16; ++k) {
      if (!disk_sector_check(cc, b, k * std::numbers::pi / 8.0)) return false;
    }
    for (std::size_t o = 0; o < config.size(); ++o) {
      if (o == b) continue;
      const double angle =
          std::atan2(config[o].y - config[b].y, config[o].x - config[b].x);
      if (!disk_sector_check(cc, b, angle)) return false;
    }
  }
  return true;
}

ExteriorResult exterior_test(const PlanarConfiguration& config, std::size_t h, std::size_t i,
                             std::size_t j, std::size_t k) {
  const std::size_t n = config.size();
  if (h >= n || i >= n || j >= n || k >= n) throw Error(ErrorCode::Dimension, "invalid index");
  std::array<std::size_t, 4> ids{h, i, j, k};
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::Dimension, "indices must be distinct");
  }

  ExteriorResult out;
  const double rk = config.distance(h, k);
  out.hypothesis = config.distance(h, i) <= rk && config.distance(h, j) <= rk;

  // Closed triangle membership: all three edge orientations agree (or vanish).
  double orient = config.delta(h, i, j);
  const double a = config.delta(h, i, k);
  const double b = config.delta(i, j, k);
  const double c = config.delta(j, h, k);
  if (orient < 0.0) orient = -1.0; else orient = 1.0;
  const bool inside = a * orient >= 0.0 && b * orient >= 0.0 && c * orient >= 0.0;
  out.exterior = !inside;

  if (out.hypothesis && !out.exterior) {
    throw Error(ErrorCode::Integrity,
                "distance hypothesis holds but the point is not exterior to the triangle");
  }
  return out;
}

}  // namespace bwcc
