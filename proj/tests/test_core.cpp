#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "bwcc/core.hpp"
#include "bwcc/error.hpp"
#include "support.hpp"

using namespace bwcc;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

PlanarConfiguration equilateral(double side) {
  return PlanarConfiguration({{0.0, 0.0}, {side, 0.0}, {0.5 * side, 0.5 * std::sqrt(3.0) * side}});
}

}  // namespace

TEST_CASE("mass vector validation") {
  CHECK(code_of([] { MassVector({1.0}); }) == ErrorCode::Dimension);
  CHECK(code_of([] { MassVector({1.0, 0.0}); }) == ErrorCode::InvalidMass);
  CHECK(code_of([] { MassVector({1.0, -2.0}); }) == ErrorCode::InvalidMass);
  CHECK(code_of([] { MassVector({1.0, NAN}); }) == ErrorCode::InvalidMass);
  MassVector m({1.0, 2.0, 3.0});
  CHECK(m.total() == 6.0);
  CHECK(m.product() == 6.0);
}

TEST_CASE("configuration validation and areas") {
  CHECK(code_of([] { PlanarConfiguration({{0, 0}, {0, 0}, {1, 0}}); }) ==
        ErrorCode::SingularDistance);
  const PlanarConfiguration q({{0, 0}, {1, 0}, {0, 1}, {2, 0}});
  CHECK(q.delta(0, 1, 2) == doctest::Approx(1.0));
  CHECK(q.delta(0, 2, 1) == doctest::Approx(-1.0));
  CHECK(q.delta(1, 2, 0) == doctest::Approx(1.0));
  CHECK(q.delta(0, 1, 3) == 0.0);
  const AreaTable a(q);
  CHECK(a.collinear(0, 1, 3));
  CHECK_FALSE(a.collinear(0, 1, 2));
}

TEST_CASE("two-index areas follow the even permutation") {
  std::mt19937_64 rng(3);
  const PlanarConfiguration q = testsupport::random_config(rng, 5);
  const AreaTable a(q);
  // (h, i, j, k, l) = (2, 3, 4, 0, 1) is even.
  CHECK(a.pair(0, 1) == doctest::Approx(q.delta(2, 3, 4)));
  CHECK(a.pair(1, 0) == doctest::Approx(-q.delta(2, 3, 4)));
  // (0, 2, 4, 1, 3) is odd.
  CHECK(a.pair(1, 3) == doctest::Approx(-q.delta(0, 2, 4)));
}

TEST_CASE("wedge norm equals the Gram determinant in the mass metric") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const PlanarConfiguration q = testsupport::random_config(rng, n);
    const MassVector m = testsupport::random_mass(rng, n);
    Eigen::MatrixXd v(3, n);
    for (std::size_t i = 0; i < n; ++i) v.col(i) << 1.0, q[i].x, q[i].y;
    Eigen::VectorXd w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = m[i];
    const Eigen::Matrix3d gram = v * w.asDiagonal() * v.transpose();
    CHECK(wedge_norm_squared(q, m) == doctest::Approx(gram.determinant()).epsilon(1e-10));
  }
  CHECK(wedge_norm_squared(PlanarConfiguration({{0, 0}, {1, 1}, {3, 3}}), MassVector({1, 2, 3})) ==
        0.0);
}

TEST_CASE("mass inner product") {
  const MassVector m({1.0, 2.0, 4.0});
  const std::vector<double> a{1.0, 2.0, 4.0};
  const std::vector<double> b{3.0, 1.0, 2.0};
  CHECK(mass_inner_product(a, b, m) == doctest::Approx(3.0 + 1.0 + 2.0));
}

TEST_CASE("multiplier of the equilateral triangle") {
  const MassVector m({1.0, 2.0, 3.0});
  const PlanarConfiguration q = equilateral(1.0);
  // sum_j m_j (q_j - q_i) / r^3 = lambda (c - q_i) with c the center of mass
  // forces lambda = M / r^3.
  CHECK(multiplier(m, q) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(central_residual(m, q, 6.0) < 1e-14);
  CHECK(multiplier(m, equilateral(2.0)) == doctest::Approx(6.0 / 8.0).epsilon(1e-14));
  CentralConfiguration bad = make_central(m, q);
  bad.lambda = -1.0;
  CHECK(code_of([&] { normalize(bad); }) == ErrorCode::InvalidMultiplier);
}

TEST_CASE("normalizing the doubled triangle restores side 1") {
  const CentralConfiguration cc = make_central(MassVector({1, 1, 1}), equilateral(2.0));
  CHECK(cc.lambda == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  const CentralConfiguration a = normalize(cc);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    CHECK(a.configuration.distance(i, j) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("wedge norm of the unit cross") {
  const PlanarConfiguration q({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  CHECK(wedge_norm_squared(q, MassVector({1, 1, 1, 1})) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("tables under translation and scaling") {
  std::mt19937_64 rng(17);
  const PlanarConfiguration q = testsupport::random_config(rng, 5);
  const PlanarConfiguration t = q.translated(3.5, -2.25);
  const PlanarConfiguration s = q.scaled(1.7);
  const DistanceTable dq(q), dt(t), ds(s);
  const AreaTable aq(q), at(t), as(s);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      CHECK(dt.s(i, j) == doctest::Approx(dq.s(i, j)).epsilon(1e-12));
      CHECK(ds.s(i, j) == doctest::Approx(dq.s(i, j) / (1.7 * 1.7 * 1.7)).epsilon(1e-12));
      CHECK(dq.s_shifted(i, j) == doctest::Approx(dq.s(i, j) - 1.0));
      for (std::size_t h = 0; h < 5; ++h) {
        if (h == i || h == j) continue;
        CHECK(at.delta(h, i, j) == doctest::Approx(aq.delta(h, i, j)).epsilon(1e-12).scale(1.0));
        CHECK(as.delta(h, i, j) == doctest::Approx(1.7 * 1.7 * aq.delta(h, i, j)).epsilon(1e-12).scale(1.0));
        CHECK(aq.delta(h, i, j) + aq.delta(i, h, j) == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("normalize fixes the gauge and preserves shape") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const PlanarConfiguration q = testsupport::random_config(rng, n);
    const MassVector m = testsupport::random_mass(rng, n);
    const CentralConfiguration cc = make_central(m, q.rotated(0.3 * trial).translated(2.0, -1.0));
    const CentralConfiguration a = normalize(cc);
    CHECK(a.normalized);
    CHECK(is_normalized(a));
    CHECK(a.lambda == doctest::Approx(m.total()).epsilon(1e-12));
    CHECK(multiplier(a.masses, a.configuration) == doctest::Approx(m.total()).epsilon(1e-12));
    const double ratio = a.configuration.distance(0, 1) / q.distance(0, 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        CHECK(a.configuration.distance(i, j) ==
              doctest::Approx(ratio * q.distance(i, j)).epsilon(1e-12));
      }
    }
    // Idempotent.
    const CentralConfiguration b = normalize(a);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(b.configuration[i].x - a.configuration[i].x) < 1e-12);
      CHECK(std::abs(b.configuration[i].y - a.configuration[i].y) < 1e-12);
    }
    // Mirror images normalize to the same positions.
    const CentralConfiguration c = normalize(make_central(m, q.reflected()));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(c.configuration[i].x - a.configuration[i].x) < 1e-9);
      CHECK(std::abs(c.configuration[i].y - a.configuration[i].y) < 1e-9);
    }
  }
}

TEST_CASE("lambda omega relation") {
  const CentralConfiguration cc = make_central(MassVector({1, 1, 1}), equilateral(1.0));
  CHECK(cc.omega() * cc.omega() == doctest::Approx(cc.lambda));
}
