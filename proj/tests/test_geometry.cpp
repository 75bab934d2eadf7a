#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "bwcc/error.hpp"
#include "bwcc/geometry.hpp"
#include "bwcc/solver.hpp"
#include "support.hpp"

using namespace bwcc;

namespace {

double cross(Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

// Brute force: a point is extreme unless some triangle of the other points
// contains it (Caratheodory in the plane).
std::set<std::size_t> brute_extremes(const PlanarConfiguration& q) {
  const std::size_t n = q.size();
  std::set<std::size_t> out;
  for (std::size_t p = 0; p < n; ++p) {
    bool covered = false;
    for (std::size_t a = 0; a < n && !covered; ++a) {
      for (std::size_t b = a + 1; b < n && !covered; ++b) {
        for (std::size_t c = b + 1; c < n && !covered; ++c) {
          if (a == p || b == p || c == p) continue;
          const double s = cross(q[a], q[b], q[c]) > 0 ? 1.0 : -1.0;
          covered = s * cross(q[a], q[b], q[p]) >= 0 && s * cross(q[b], q[c], q[p]) >= 0 &&
                    s * cross(q[c], q[a], q[p]) >= 0;
        }
      }
    }
    if (!covered) out.insert(p);
  }
  return out;
}

CentralConfiguration forced_normalized(std::vector<Point> p) {
  const MassVector m(std::vector<double>(p.size(), 1.0));
  return CentralConfiguration{m, PlanarConfiguration(std::move(p)), m.total(), 0.0, true};
}

}  // namespace

TEST_CASE("hull tags on hand-made sets") {
  CHECK(classify_hull(PlanarConfiguration({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}})).tag ==
        HullTag::Collinear);
  CHECK(classify_hull(PlanarConfiguration({{0, 0}, {4, 0}, {0, 4}, {1, 1}, {1, 2}})).tag ==
        HullTag::TriangularHull);
  CHECK(classify_hull(PlanarConfiguration({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}})).tag ==
        HullTag::QuadrilateralHull);
  // A point on a hull edge is not extreme.
  CHECK(classify_hull(PlanarConfiguration({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 0}})).tag ==
        HullTag::QuadrilateralHull);
  CHECK(classify_hull(known_configuration(KnownConfiguration::Pentagon).configuration).tag ==
        HullTag::StrictlyConvex);
  CHECK(hull_tag_from_string("triangular") == HullTag::TriangularHull);
  CHECK(std::string(to_string(HullTag::QuadrilateralHull)) == "quadrilateral");
}

TEST_CASE("extreme points agree with a brute-force oracle") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 5 + t % 3;
    const auto q = testsupport::random_config(rng, n);
    const HullClass h = classify_hull(q);
    const std::set<std::size_t> ours(h.boundary.begin(), h.boundary.end());
    CHECK(ours == brute_extremes(q));
    // Counterclockwise boundary.
    for (std::size_t k = 0; k < h.boundary.size(); ++k) {
      const Point a = q[h.boundary[k]];
      const Point b = q[h.boundary[(k + 1) % h.boundary.size()]];
      const Point c = q[h.boundary[(k + 2) % h.boundary.size()]];
      CHECK(cross(a, b, c) > 0.0);
    }
  }
}

TEST_CASE("canonical numberings") {
  std::mt19937_64 rng(37);
  int tri = 0, quad = 0, convex = 0;
  for (int t = 0; t < 400; ++t) {
    const auto q = testsupport::random_config(rng, 5);
    const HullClass h = classify_hull(q);
    std::vector<std::size_t> sorted = h.relabeling;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4});
    const auto& r = h.relabeling;
    auto p = [&](int k) { return q[r[k]]; };
    switch (h.tag) {
      case HullTag::TriangularHull: {
        ++tri;
        CHECK(cross(p(0), p(1), p(2)) > 0.0);
        // q1, q2, q5, q4 convex counterclockwise.
        const std::array<Point, 4> quad4{p(0), p(1), p(4), p(3)};
        for (int k = 0; k < 4; ++k) CHECK(cross(quad4[k], quad4[(k + 1) % 4], quad4[(k + 2) % 4]) > 0.0);
        break;
      }
      case HullTag::QuadrilateralHull:
        ++quad;
        for (int k = 0; k < 4; ++k) CHECK(cross(p(k), p((k + 1) % 4), p((k + 2) % 4)) > 0.0);
        CHECK(brute_extremes(q).count(r[4]) == 0);
        break;
      case HullTag::StrictlyConvex:
        ++convex;
        for (int k = 0; k < 5; ++k) CHECK(cross(p(k), p((k + 1) % 5), p((k + 2) % 5)) > 0.0);
        break;
      default:
        FAIL("unexpected tag");
    }
  }
  CHECK(tri > 10);
  CHECK(quad > 10);
  CHECK(convex > 10);
}

TEST_CASE("relabel permutes masses and positions together") {
  const CentralConfiguration cc = known_configuration(KnownConfiguration::SquareCenter, 2.0);
  const CentralConfiguration r = relabel(cc, {4, 0, 1, 2, 3});
  CHECK(r.masses[0] == 2.0);
  CHECK(r.configuration[0].x == cc.configuration[4].x);
  CHECK(r.lambda == cc.lambda);
}

TEST_CASE("perpendicular bisector test on a configuration that cannot be central") {
  // Bodies p, q on the x-axis; every other body strictly in I° or III°.
  const PlanarConfiguration q({{-1, 0}, {1, 0}, {0.5, 0.5}, {-0.5, -0.7}, {2.0, 1.0}});
  const MassVector m({1, 1, 1, 1, 1});
  const QuadrantReport rep = perpendicular_bisector_check(q, m, 0, 1);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.bodies[2].quadrant == Quadrant::I);
  CHECK(rep.bodies[3].quadrant == Quadrant::III);
  CHECK(rep.bodies[2].interior);
  CHECK_FALSE(rep.bodies[0].interior);
  CHECK_FALSE(perpendicular_bisector_all(q, m));
}

TEST_CASE("perpendicular bisector boundary convention") {
  // Third body on the line pq, fourth on the bisector: no violation.
  const PlanarConfiguration q({{-1, 0}, {1, 0}, {3, 0}, {0, 2}});
  const QuadrantReport rep = perpendicular_bisector_check(q, MassVector({1, 1, 1, 1}), 0, 1);
  CHECK(rep.verdict);
  CHECK_FALSE(rep.bodies[2].interior);
  CHECK_FALSE(rep.bodies[3].interior);
}

TEST_CASE("disk sector test") {
  // Body 0 at the origin, horizontal line: one body in the upper half disk,
  // one below outside the circle, nothing in the complementary domain.
  const CentralConfiguration bad =
      forced_normalized({{0, 0}, {0.3, 0.4}, {0.5, -2.0}, {-3.0, 0.0}});
  CHECK_FALSE(disk_sector_check(bad, 0, 0.0));
  CHECK_FALSE(disk_sector_all(bad));
  // Exactly on the circle or on the line: boundary.
  const CentralConfiguration edge = forced_normalized({{0, 0}, {0.6, 0.8}, {2.0, 0.0}});
  CHECK(disk_sector_check(edge, 0, 0.0));

  CentralConfiguration raw = forced_normalized({{0, 0}, {1, 1}, {2, 0}});
  raw.normalized = false;
  try {
    disk_sector_check(raw, 0, 0.0);
    FAIL("expected normalization error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NormalizationRequired);
  }
}

TEST_CASE("predicates hold on solver output") {
  for (const SolveResult& r : testsupport::five_body_sample(20)) {
    CHECK(perpendicular_bisector_all(r.cc.configuration, r.cc.masses));
    CHECK(disk_sector_all(r.cc));
  }
  const CentralConfiguration square = known_configuration(KnownConfiguration::SquareCenter, 0.5);
  CHECK(perpendicular_bisector_all(square.configuration, square.masses));
  CHECK(disk_sector_all(square));
}

TEST_CASE("exterior point test") {
  const PlanarConfiguration q({{0, 0}, {1, 0}, {0, 1}, {2, 2}});
  const ExteriorResult r = exterior_test(q, 0, 1, 2, 3);
  CHECK(r.hypothesis);
  CHECK(r.exterior);
  // Distance hypothesis with an interior point is inconsistent.
  const PlanarConfiguration bad({{0, 0}, {3, 0}, {0, 3}, {0.5, 0.5}});
  CHECK(exterior_test(bad, 0, 1, 2, 3).hypothesis == false);
  // On solver output the statement holds for every ordered quadruple.
  for (const SolveResult& s : testsupport::five_body_sample(10)) {
    for (std::size_t h = 0; h < 5; ++h)
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
          for (std::size_t k = 0; k < 5; ++k) {
            if (h == i || h == j || h == k || i == k || j == k) continue;
            CHECK_NOTHROW(exterior_test(s.cc.configuration, h, i, j, k));
          }
  }
}
