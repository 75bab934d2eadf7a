#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bwcc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Positive masses of n >= 2 bodies. The mass metric is diag(m).
class MassVector {
 public:
  explicit MassVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  double total() const noexcept { return total_; }
  double product() const noexcept;

  MassVector scaled(double factor) const;
  MassVector permuted(std::span<const std::size_t> order) const;

  bool operator==(const MassVector&) const = default;

 private:
  std::vector<double> values_;
  double total_ = 0.0;
};

// n distinct points in the plane.
class PlanarConfiguration {
 public:
  explicit PlanarConfiguration(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  double distance(std::size_t i, std::size_t j) const;
  // Largest mutual distance.
  double scale() const;

  // Twice the oriented area of the triangle (q_h, q_i, q_j).
  double delta(std::size_t h, std::size_t i, std::size_t j) const;

  // Mass-weighted center.
  Point center(const MassVector& masses) const;

  PlanarConfiguration translated(double dx, double dy) const;
  PlanarConfiguration scaled(double factor) const;
  PlanarConfiguration rotated(double angle) const;
  PlanarConfiguration reflected() const;  // y -> -y
  // Body k of the result is body order[k] of this configuration.
  PlanarConfiguration permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<Point> points_;
};

// Symmetric n x n tables of r_ij, S_ij = 1/r^3 and the shifted S_ij - 1.
class DistanceTable {
 public:
  explicit DistanceTable(const PlanarConfiguration& config);

  std::size_t size() const noexcept { return n_; }
  double r(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
  double s(std::size_t i, std::size_t j) const { return s_[i * n_ + j]; }
  double s_shifted(std::size_t i, std::size_t j) const { return shifted_[i * n_ + j]; }
  double max_distance() const noexcept { return max_r_; }

 private:
  std::size_t n_;
  std::vector<double> r_;
  std::vector<double> s_;
  std::vector<double> shifted_;
  double max_r_ = 0.0;
};

// Twice the oriented areas of all ordered triples. For n = 5 the table also
// carries the two-index form: pair(k, l) = delta(h, i, j) whenever
// (h, i, j, k, l) is an even permutation of (0, 1, 2, 3, 4).
class AreaTable {
 public:
  explicit AreaTable(const PlanarConfiguration& config);

  std::size_t size() const noexcept { return n_; }
  double delta(std::size_t h, std::size_t i, std::size_t j) const {
    return delta_[(h * n_ + i) * n_ + j];
  }
  double pair(std::size_t k, std::size_t l) const;
  double collinear_threshold() const noexcept { return threshold_; }
  bool collinear(std::size_t h, std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::vector<double> delta_;
  double threshold_;
};

// Relative tolerance for calling a triple collinear: |delta| <= tol * scale^2.
inline constexpr double kCollinearTolerance = 1e-10;

double collinear_threshold(const PlanarConfiguration& config);

// Sum_i phi_i psi_i / m_i.
double mass_inner_product(std::span<const double> phi,
                          std::span<const double> psi,
                          const MassVector& masses);

inline AreaTable areas(const PlanarConfiguration& config) {
  return AreaTable(config);
}

// Gram determinant of (U, X, Y) under the mass metric sum m_i u_i v_i.
double wedge_norm_squared(const PlanarConfiguration& config,
                          const MassVector& masses);

// Newtonian force function sum_{i<j} m_i m_j / r_ij.
double newton_potential(const MassVector& masses,
                        const PlanarConfiguration& config);

// Moment of inertia about the center of mass.
double inertia(const MassVector& masses, const PlanarConfiguration& config);

// The multiplier that a central configuration with these positions must have:
// lambda = U / I.
double multiplier(const MassVector& masses, const PlanarConfiguration& config);

// max_i |sum_j m_j (S_ij - lambda/M)(q_j - q_i)| / lambda. At lambda = M this
// is max_i |grad_i of the amended potential| / (m_i M).
double central_residual(const MassVector& masses,
                        const PlanarConfiguration& config, double lambda);

struct CentralConfiguration {
  MassVector masses;
  PlanarConfiguration configuration;
  double lambda = 0.0;
  double gradient_residual = 0.0;
  bool normalized = false;

  std::size_t size() const noexcept { return masses.size(); }
  double omega() const;
};

// Wraps positions and masses, deriving lambda = U / I and the residual.
CentralConfiguration make_central(MassVector masses, PlanarConfiguration config);

// Rescales so lambda = M, centers, rotates to principal axes and reflects so
// the first non-collinear triple (lexicographic) is positively oriented.
CentralConfiguration normalize(const CentralConfiguration& cc);

// Tolerances defining the normalized gauge.
bool is_normalized(const CentralConfiguration& cc);

}  // namespace bwcc
