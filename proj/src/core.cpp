#include "bwcc/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bwcc/error.hpp"

namespace bwcc {

MassVector::MassVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::Dimension, "at least two masses are required");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidMass,
                  "mass " + std::to_string(i + 1) + " is not strictly positive");
    }
  }
  total_ = std::accumulate(values_.begin(), values_.end(), 0.0);
}

double MassVector::product() const noexcept {
  double p = 1.0;
  for (double m : values_) p *= m;
  return p;
}

MassVector MassVector::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& m : v) m *= factor;
  return MassVector(std::move(v));
}

MassVector MassVector::permuted(std::span<const std::size_t> order) const {
  if (order.size() != values_.size()) {
    throw Error(ErrorCode::Dimension, "permutation length mismatch");
  }
  std::vector<double> v(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) v[k] = values_.at(order[k]);
  return MassVector(std::move(v));
}

PlanarConfiguration::PlanarConfiguration(std::vector<Point> points)
    : points_(std::move(points)) {
  for (const Point& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::Configuration, "non-finite coordinate");
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (distance(i, j) == 0.0) {
        throw Error(ErrorCode::SingularDistance,
                    "bodies " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " coincide");
      }
    }
  }
}

double PlanarConfiguration::distance(std::size_t i, std::size_t j) const {
  return std::hypot(points_[i].x - points_[j].x, points_[i].y - points_[j].y);
}

double PlanarConfiguration::scale() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) s = std::max(s, distance(i, j));
  }
  return s;
}

double PlanarConfiguration::delta(std::size_t h, std::size_t i, std::size_t j) const {
  const Point& a = points_[h];
  const double ux = points_[i].x - a.x;
  const double uy = points_[i].y - a.y;
  const double vx = points_[j].x - a.x;
  const double vy = points_[j].y - a.y;
  return ux * vy - uy * vx;
}

Point PlanarConfiguration::center(const MassVector& masses) const {
  if (masses.size() != size()) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
  Point c;
  for (std::size_t i = 0; i < size(); ++i) {
    c.x += masses[i] * points_[i].x;
    c.y += masses[i] * points_[i].y;
  }
  c.x /= masses.total();
  c.y /= masses.total();
  return c;
}

PlanarConfiguration PlanarConfiguration::translated(double dx, double dy) const {
  std::vector<Point> p(points_);
  for (Point& q : p) {
    q.x += dx;
    q.y += dy;
  }
  return PlanarConfiguration(std::move(p));
}

PlanarConfiguration PlanarConfiguration::scaled(double factor) const {
  std::vector<Point> p(points_);
  for (Point& q : p) {
    q.x *= factor;
    q.y *= factor;
  }
  return PlanarConfiguration(std::move(p));
}

PlanarConfiguration PlanarConfiguration::rotated(double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point> p(points_);
  for (Point& q : p) q = {c * q.x - s * q.y, s * q.x + c * q.y};
  return PlanarConfiguration(std::move(p));
}

PlanarConfiguration PlanarConfiguration::reflected() const {
  std::vector<Point> p(points_);
  for (Point& q : p) q.y = -q.y;
  return PlanarConfiguration(std::move(p));
}

PlanarConfiguration PlanarConfiguration::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) {
    throw Error(ErrorCode::Dimension, "permutation length mismatch");
  }
  std::vector<Point> p(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) p[k] = points_.at(order[k]);
  return PlanarConfiguration(std::move(p));
}

DistanceTable::DistanceTable(const PlanarConfiguration& config)
    : n_(config.size()), r_(n_ * n_, 0.0), s_(n_ * n_, 0.0), shifted_(n_ * n_, 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double r = config.distance(i, j);
      const double s = 1.0 / (r * r * r);
      r_[i * n_ + j] = r_[j * n_ + i] = r;
      s_[i * n_ + j] = s_[j * n_ + i] = s;
      shifted_[i * n_ + j] = shifted_[j * n_ + i] = s - 1.0;
      max_r_ = std::max(max_r_, r);
    }
  }
}

double collinear_threshold(const PlanarConfiguration& config) {
  const double s = config.scale();
  return kCollinearTolerance * s * s;
}

AreaTable::AreaTable(const PlanarConfiguration& config)
    : n_(config.size()), delta_(n_ * n_ * n_, 0.0), threshold_(bwcc::collinear_threshold(config)) {
  for (std::size_t h = 0; h < n_; ++h) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (h == i || i == j || h == j) continue;
        delta_[(h * n_ + i) * n_ + j] = config.delta(h, i, j);
      }
    }
  }
}

namespace {

bool even_permutation(std::span<const std::size_t> p) {
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) inversions += p[a] > p[b];
  }
  return inversions % 2 == 0;
}

}  // namespace

double AreaTable::pair(std::size_t k, std::size_t l) const {
  if (n_ != 5) {
    throw Error(ErrorCode::Dimension, "the two-index area form needs five bodies");
  }
  if (k == l || k >= 5 || l >= 5) {
    throw Error(ErrorCode::Dimension, "invalid index pair");
  }
  std::array<std::size_t, 5> p{};
  std::size_t pos = 0;
  for (std::size_t a = 0; a < 5; ++a) {
    if (a != k && a != l) p[pos++] = a;
  }
  p[3] = k;
  p[4] = l;
  if (!even_permutation(p)) std::swap(p[0], p[1]);
  return delta(p[0], p[1], p[2]);
}

bool AreaTable::collinear(std::size_t h, std::size_t i, std::size_t j) const {
  return std::abs(delta(h, i, j)) <= threshold_;
}

double mass_inner_product(std::span<const double> phi, std::span<const double> psi,
                          const MassVector& masses) {
  if (phi.size() != masses.size() || psi.size() != masses.size()) {
    throw Error(ErrorCode::Dimension, "covector length does not match the number of bodies");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) sum += phi[i] * psi[i] / masses[i];
  return sum;
}

double wedge_norm_squared(const PlanarConfiguration& config, const MassVector& masses) {
  // Subtracting multiples of U from X and Y leaves the Gram determinant
  // unchanged, so work with centered coordinates.
  const Point c = config.center(masses);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double x = config[i].x - c.x;
    const double y = config[i].y - c.y;
    sxx += masses[i] * x * x;
    syy += masses[i] * y * y;
    sxy += masses[i] * x * y;
  }
  const double det = sxx * syy - sxy * sxy;
  // Collinear up to roundoff.
  if (det <= 1e-14 * sxx * syy) return 0.0;
  return masses.total() * det;
}

double newton_potential(const MassVector& masses, const PlanarConfiguration& config) {
  double u = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      u += masses[i] * masses[j] / config.distance(i, j);
    }
  }
  return u;
}

double inertia(const MassVector& masses, const PlanarConfiguration& config) {
  const Point c = config.center(masses);
  double sum = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double dx = config[i].x - c.x;
    const double dy = config[i].y - c.y;
    sum += masses[i] * (dx * dx + dy * dy);
  }
  return sum;
}

double multiplier(const MassVector& masses, const PlanarConfiguration& config) {
  if (masses.size() != config.size()) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
  return newton_potential(masses, config) / inertia(masses, config);
}

double central_residual(const MassVector& masses, const PlanarConfiguration& config,
                        double lambda) {
  if (masses.size() != config.size()) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
  const std::size_t n = config.size();
  const double shift = lambda / masses.total();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fx = 0.0, fy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = config.distance(i, j);
      const double w = masses[j] * (1.0 / (r * r * r) - shift);
      fx += w * (config[j].x - config[i].x);
      fy += w * (config[j].y - config[i].y);
    }
    worst = std::max(worst, std::hypot(fx, fy));
  }
  return worst / lambda;
}

double CentralConfiguration::omega() const { return std::sqrt(lambda); }

CentralConfiguration make_central(MassVector masses, PlanarConfiguration config) {
  const double lambda = multiplier(masses, config);
  const double residual = central_residual(masses, config, lambda);
  CentralConfiguration cc{std::move(masses), std::move(config), lambda, residual, false};
  cc.normalized = is_normalized(cc);
  return cc;
}

CentralConfiguration normalize(const CentralConfiguration& cc) {
  if (!(cc.lambda > 0.0) || !std::isfinite(cc.lambda)) {
    throw Error(ErrorCode::InvalidMultiplier, "multiplier must be positive");
  }
  const MassVector& m = cc.masses;
  const double M = m.total();

  PlanarConfiguration q = cc.configuration.scaled(std::cbrt(cc.lambda / M));
  const Point c = q.center(m);
  q = q.translated(-c.x, -c.y);

  double ixx = 0.0, iyy = 0.0, ixy = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    ixx += m[i] * q[i].x * q[i].x;
    iyy += m[i] * q[i].y * q[i].y;
    ixy += m[i] * q[i].x * q[i].y;
  }
  const double trace = ixx + iyy;
  const bool isotropic =
      std::abs(ixx - iyy) <= 1e-10 * trace && std::abs(ixy) <= 1e-10 * trace;
  if (!isotropic) {
    // Major axis onto x.
    const double theta = 0.5 * std::atan2(2.0 * ixy, ixx - iyy);
    q = q.rotated(-theta);
  }

  const double scale = q.scale();
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::abs(q[i].x) > 1e-9 * scale) {
      if (q[i].x < 0.0) q = q.rotated(std::acos(-1.0));
      break;
    }
  }

  const double threshold = collinear_threshold(q);
  bool oriented = false;
  for (std::size_t h = 0; h < q.size() && !oriented; ++h) {
    for (std::size_t i = h + 1; i < q.size() && !oriented; ++i) {
      for (std::size_t j = i + 1; j < q.size() && !oriented; ++j) {
        const double d = q.delta(h, i, j);
        if (std::abs(d) > threshold) {
          if (d < 0.0) q = q.reflected();
          oriented = true;
        }
      }
    }
  }

  const double residual = central_residual(m, q, M);
  return CentralConfiguration{m, std::move(q), M, residual, true};
}

bool is_normalized(const CentralConfiguration& cc) {
  const MassVector& m = cc.masses;
  const double M = m.total();
  if (std::abs(cc.lambda - M) > 1e-12 * M) return false;
  const PlanarConfiguration& q = cc.configuration;
  const double scale = q.scale();
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sx += m[i] * q[i].x;
    sy += m[i] * q[i].y;
    sxy += m[i] * q[i].x * q[i].y;
  }
  return std::abs(sx) <= 1e-12 * scale * M && std::abs(sy) <= 1e-12 * scale * M &&
         std::abs(sxy) <= 1e-10 * scale * scale * M;
}

}  // namespace bwcc
