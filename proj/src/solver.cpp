#include "bwcc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "bwcc/error.hpp"

namespace bwcc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; identical across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_size(const MassVector& masses, const PlanarConfiguration& config) {
  if (masses.size() != config.size()) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
}

}  // namespace

const char* to_string(SeedShape shape) noexcept {
  switch (shape) {
    case SeedShape::Disk: return "disk";
    case SeedShape::Ring: return "ring";
    case SeedShape::Quadrilateral: return "quadrilateral";
    case SeedShape::Triangular: return "triangular";
  }
  return "unknown";
}

void SolveOptions::validate() const {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::Configuration, "tolerance must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::Configuration, "max_iterations must be >= 1");
  if (!(damping > 0.0)) throw Error(ErrorCode::Configuration, "damping must be positive");
  if (!(min_separation > 0.0) || min_separation >= 1.0) {
    throw Error(ErrorCode::Configuration, "min_separation must lie in (0, 1)");
  }
}

double amended_potential(const MassVector& masses, const PlanarConfiguration& config) {
  require_size(masses, config);
  double u = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t j = i + 1; j < config.size(); ++j) {
      const double r = config.distance(i, j);
      u += masses[i] * masses[j] * (1.0 / r + 0.5 * r * r);
    }
  }
  return u;
}

namespace {

// a_i = sum_j m_j (S_ij - 1)(q_j - q_i), flattened.
std::vector<double> accelerations(const MassVector& masses, const PlanarConfiguration& config) {
  const std::size_t n = config.size();
  std::vector<double> a(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = config[j].x - config[i].x;
      const double dy = config[j].y - config[i].y;
      const double r = std::hypot(dx, dy);
      const double w = 1.0 / (r * r * r) - 1.0;
      a[2 * i] += masses[j] * w * dx;
      a[2 * i + 1] += masses[j] * w * dy;
      a[2 * j] -= masses[i] * w * dx;
      a[2 * j + 1] -= masses[i] * w * dy;
    }
  }
  return a;
}

}  // namespace

std::vector<Point> amended_gradient(const MassVector& masses, const PlanarConfiguration& config) {
  require_size(masses, config);
  const std::vector<double> a = accelerations(masses, config);
  std::vector<Point> g(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    g[i] = {masses[i] * a[2 * i], masses[i] * a[2 * i + 1]};
  }
  return g;
}

Matrix acceleration_jacobian(const MassVector& masses, const PlanarConfiguration& config) {
  require_size(masses, config);
  const std::size_t n = config.size();
  Matrix jac(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = config[j].x - config[i].x;
      const double dy = config[j].y - config[i].y;
      const double r = std::hypot(dx, dy);
      const double r3 = r * r * r;
      const double w = 1.0 / r3 - 1.0;
      const double c = -3.0 / (r3 * r * r);
      // d/dq_j of m_j w(r) (q_j - q_i)
      const double bxx = masses[j] * (w + c * dx * dx);
      const double bxy = masses[j] * (c * dx * dy);
      const double byy = masses[j] * (w + c * dy * dy);
      jac(2 * i, 2 * j) += bxx;
      jac(2 * i, 2 * j + 1) += bxy;
      jac(2 * i + 1, 2 * j) += bxy;
      jac(2 * i + 1, 2 * j + 1) += byy;
      jac(2 * i, 2 * i) -= bxx;
      jac(2 * i, 2 * i + 1) -= bxy;
      jac(2 * i + 1, 2 * i) -= bxy;
      jac(2 * i + 1, 2 * i + 1) -= byy;
    }
  }
  return jac;
}

PlanarConfiguration seed_configuration(const MassVector& masses, const SolveOptions& options) {
  options.validate();
  const std::size_t n = masses.size();
  std::mt19937_64 rng(splitmix64(options.seed));
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  SeedShape shape = options.shape;
  if ((shape == SeedShape::Quadrilateral && n < 5) || (shape == SeedShape::Triangular && n < 4)) {
    shape = SeedShape::Disk;
  }

  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<std::size_t> slot(n);
    std::iota(slot.begin(), slot.end(), 0);
    for (std::size_t k = n; k > 1; --k) {
      std::swap(slot[k - 1], slot[static_cast<std::size_t>(unit(rng) * static_cast<double>(k))]);
    }
    std::vector<Point> p(n);
    auto in_disk = [&](double radius) {
      const double r = radius * std::sqrt(unit(rng));
      const double t = kTwoPi * unit(rng);
      return Point{r * std::cos(t), r * std::sin(t)};
    };
    auto on_polygon = [&](std::size_t k, std::size_t sides, double radius, double phase) {
      const double t = phase + kTwoPi * (static_cast<double>(k) + 0.3 * (unit(rng) - 0.5)) /
                                   static_cast<double>(sides);
      const double r = radius * (1.0 + 0.2 * (unit(rng) - 0.5));
      return Point{r * std::cos(t), r * std::sin(t)};
    };
    for (std::size_t k = 0; k < n; ++k) {
      Point& q = p[slot[k]];
      switch (shape) {
        case SeedShape::Disk: q = in_disk(1.0); break;
        case SeedShape::Ring: q = on_polygon(k, n, 0.8, 0.0); break;
        case SeedShape::Quadrilateral:
          q = k < 4 ? on_polygon(k, 4, 0.75, 0.25 * std::numbers::pi) : in_disk(0.25);
          break;
        case SeedShape::Triangular:
          q = k < 3 ? on_polygon(k, 3, 1.0, 0.5 * std::numbers::pi) : in_disk(0.4);
          break;
      }
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        ok = std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) >= options.min_separation;
      }
    }
    if (ok) return PlanarConfiguration(std::move(p));
  }
  throw Error(ErrorCode::Configuration, "could not place bodies at the requested separation");
}

namespace {

struct LmState {
  std::vector<double> masses;
  std::vector<Point> points;
};

struct LmOutcome {
  LmState state;
  int iterations = 0;
};

// Unknowns: positions, then the free mass when present. Residuals: the
// accelerations a_i, then M * Delta_abc when a collinear triple is imposed.
class LmProblem {
 public:
  LmProblem(std::optional<std::array<std::size_t, 3>> triple, std::optional<std::size_t> free_body)
      : triple_(triple), free_(free_body) {}

  std::vector<double> residual(const LmState& s) const {
    const MassVector m(s.masses);
    const PlanarConfiguration q(s.points);
    std::vector<double> r = accelerations(m, q);
    if (triple_) {
      const auto [a, b, c] = *triple_;
      r.push_back(m.total() * q.delta(a, b, c));
    }
    return r;
  }

  Matrix jacobian(const LmState& s) const {
    const MassVector m(s.masses);
    const PlanarConfiguration q(s.points);
    const std::size_t n = q.size();
    const Matrix ja = acceleration_jacobian(m, q);
    const std::size_t rows = 2 * n + (triple_ ? 1 : 0);
    const std::size_t cols = 2 * n + (free_ ? 1 : 0);
    Matrix jac(rows, cols);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      for (std::size_t j = 0; j < 2 * n; ++j) jac(i, j) = ja(i, j);
    }
    if (free_) {
      const std::size_t f = *free_;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == f) continue;
        const double dx = q[f].x - q[i].x;
        const double dy = q[f].y - q[i].y;
        const double r = std::hypot(dx, dy);
        const double w = 1.0 / (r * r * r) - 1.0;
        jac(2 * i, 2 * n) = w * dx;
        jac(2 * i + 1, 2 * n) = w * dy;
      }
    }
    if (triple_) {
      const auto [a, b, c] = *triple_;
      const double M = m.total();
      const std::size_t row = 2 * n;
      jac(row, 2 * a) += M * (q[b].y - q[c].y);
      jac(row, 2 * a + 1) += M * (q[c].x - q[b].x);
      jac(row, 2 * b) += M * (q[c].y - q[a].y);
      jac(row, 2 * b + 1) += M * (q[a].x - q[c].x);
      jac(row, 2 * c) += M * (q[a].y - q[b].y);
      jac(row, 2 * c + 1) += M * (q[b].x - q[a].x);
      if (free_) {
        jac(row, 2 * n) = q.delta(a, b, c);
      }
    }
    return jac;
  }

  std::optional<LmState> step(const LmState& s, std::span<const double> delta) const {
    LmState next = s;
    const std::size_t n = s.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      next.points[i].x += delta[2 * i];
      next.points[i].y += delta[2 * i + 1];
    }
    if (free_) {
      next.masses[*free_] += delta[2 * n];
      if (!(next.masses[*free_] > 0.0)) return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::hypot(next.points[i].x - next.points[j].x, next.points[i].y - next.points[j].y) <
            1e-8) {
          return std::nullopt;
        }
      }
    }
    return next;
  }

  double stop_measure(const LmState& s, std::span<const double> r) const {
    const std::size_t n = s.points.size();
    const double M = std::accumulate(s.masses.begin(), s.masses.end(), 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::hypot(r[2 * i], r[2 * i + 1]));
    worst /= M;
    if (triple_) worst = std::max(worst, std::abs(r[2 * n]) / M);
    return worst;
  }

 private:
  std::optional<std::array<std::size_t, 3>> triple_;
  std::optional<std::size_t> free_;
};

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Removes the components along translations and the infinitesimal rotation,
// orthogonally for the mass metric.
void project_gauge(const LmState& s, std::span<double> delta) {
  const std::size_t n = s.points.size();
  const double M = std::accumulate(s.masses.begin(), s.masses.end(), 0.0);
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx += s.masses[i] * s.points[i].x;
    cy += s.masses[i] * s.points[i].y;
  }
  cx /= M;
  cy /= M;
  // Translations have mass norm^2 M; the rotation about the center of mass is
  // orthogonal to both.
  double tx = 0.0, ty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tx += s.masses[i] * delta[2 * i];
    ty += s.masses[i] * delta[2 * i + 1];
  }
  tx /= M;
  ty /= M;
  double dot = 0.0, rr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rx = -(s.points[i].y - cy);
    const double ry = s.points[i].x - cx;
    dot += s.masses[i] * (rx * (delta[2 * i] - tx) + ry * (delta[2 * i + 1] - ty));
    rr += s.masses[i] * (rx * rx + ry * ry);
  }
  const double w = rr > 0.0 ? dot / rr : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    delta[2 * i] -= tx + w * (-(s.points[i].y - cy));
    delta[2 * i + 1] -= ty + w * (s.points[i].x - cx);
  }
}

LmOutcome levenberg_marquardt(const LmProblem& problem, LmState state,
                              const SolveOptions& options) {
  std::vector<double> r = problem.residual(state);
  double cost = norm2(r);
  double mu = options.damping;
  int iterations = 0;
  while (iterations < options.max_iterations && problem.stop_measure(state, r) > options.tolerance) {
    ++iterations;
    const Matrix jac = problem.jacobian(state);
    const std::size_t cols = jac.cols();
    Matrix normal(cols, cols);
    std::vector<double> rhs(cols, 0.0);
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = a; b < cols; ++b) {
        double s = 0.0;
        for (std::size_t k = 0; k < jac.rows(); ++k) s += jac(k, a) * jac(k, b);
        normal(a, b) = normal(b, a) = s;
      }
      for (std::size_t k = 0; k < jac.rows(); ++k) rhs[a] -= jac(k, a) * r[k];
    }
    double mean_diag = 0.0;
    for (std::size_t a = 0; a < cols; ++a) mean_diag += normal(a, a);
    mean_diag = std::max(mean_diag / static_cast<double>(cols), 1e-300);

    bool accepted = false;
    while (!accepted) {
      Matrix damped = normal;
      for (std::size_t a = 0; a < cols; ++a) damped(a, a) += mu * mean_diag;
      std::vector<double> delta;
      std::optional<LmState> trial;
      if (cholesky_solve(damped, rhs, delta)) {
        project_gauge(state, delta);
        trial = problem.step(state, delta);
      }
      if (trial) {
        std::vector<double> rt = problem.residual(*trial);
        const double ct = norm2(rt);
        if (ct < cost) {
          state = std::move(*trial);
          r = std::move(rt);
          cost = ct;
          mu = std::max(mu / 10.0, 1e-12);
          accepted = true;
          continue;
        }
      }
      if (mu >= 1e6) break;
      mu = std::min(mu * 10.0, 1e6);
      ++iterations;
      if (iterations >= options.max_iterations) break;
    }
    if (!accepted) break;
  }
  return LmOutcome{std::move(state), iterations};
}

SolveResult finish(const MassVector& masses, const PlanarConfiguration& config, int iterations,
                   const SolveOptions& options) {
  const CentralConfiguration raw{masses, config, masses.total(),
                                 central_residual(masses, config, masses.total()), false};
  CentralConfiguration cc = normalize(raw);
  const bool converged = cc.gradient_residual <= options.tolerance;
  HullClass hull = classify_hull(cc.configuration);
  return SolveResult{std::move(cc), iterations, converged, std::move(hull)};
}

}  // namespace

SolveResult solve_from(const MassVector& masses, const PlanarConfiguration& start,
                       const SolveOptions& options) {
  options.validate();
  require_size(masses, start);
  if (masses.size() < 3) {
    throw Error(ErrorCode::Configuration, "the planar solver needs at least three bodies");
  }
  const LmProblem problem(std::nullopt, std::nullopt);
  LmState state{std::vector<double>(masses.values().begin(), masses.values().end()),
                std::vector<Point>(start.points().begin(), start.points().end())};
  LmOutcome out = levenberg_marquardt(problem, std::move(state), options);
  return finish(masses, PlanarConfiguration(std::move(out.state.points)), out.iterations, options);
}

SolveResult find_cc(const MassVector& masses, const SolveOptions& options) {
  options.validate();
  if (masses.size() < 3) {
    throw Error(ErrorCode::Configuration, "the planar solver needs at least three bodies");
  }
  return solve_from(masses, seed_configuration(masses, options), options);
}

SolveResult solve_collinear_triple(const MassVector& masses, std::array<std::size_t, 3> triple,
                                   std::size_t free_body, const PlanarConfiguration& start,
                                   const SolveOptions& options) {
  options.validate();
  require_size(masses, start);
  const std::size_t n = masses.size();
  for (std::size_t t : triple) {
    if (t >= n) throw Error(ErrorCode::Configuration, "triple index out of range");
  }
  if (triple[0] == triple[1] || triple[1] == triple[2] || triple[0] == triple[2]) {
    throw Error(ErrorCode::Configuration, "triple indices must be distinct");
  }
  if (free_body >= n) throw Error(ErrorCode::Configuration, "free body out of range");

  const LmProblem problem(triple, free_body);
  LmState state{std::vector<double>(masses.values().begin(), masses.values().end()),
                std::vector<Point>(start.points().begin(), start.points().end())};
  LmOutcome out = levenberg_marquardt(problem, std::move(state), options);
  const MassVector solved(out.state.masses);
  const PlanarConfiguration config(std::move(out.state.points));
  SolveResult result = finish(solved, config, out.iterations, options);
  result.converged = result.converged &&
                     std::abs(config.delta(triple[0], triple[1], triple[2])) <=
                         options.tolerance * config.scale() * config.scale();
  return result;
}

SolveResult moulton_collinear(const MassVector& masses, const std::vector<std::size_t>& ordering,
                              const SolveOptions& options) {
  options.validate();
  const std::size_t n = masses.size();
  std::vector<std::size_t> sorted(ordering);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted.size() != n || sorted[k] != k) {
      throw Error(ErrorCode::Configuration, "ordering is not a permutation of the bodies");
    }
  }

  // Line masses in order; unknowns are the n - 1 gaps. The amended potential
  // is strictly convex in the gaps, so damped Newton with backtracking finds
  // the unique minimizer.
  std::vector<double> m(n);
  for (std::size_t k = 0; k < n; ++k) m[k] = masses[ordering[k]];
  const std::size_t g = n - 1;
  std::vector<double> gaps(g, 1.0);

  auto positions = [&](const std::vector<double>& d) {
    std::vector<double> x(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) x[k] = x[k - 1] + d[k - 1];
    return x;
  };
  auto potential = [&](const std::vector<double>& d) {
    const std::vector<double> x = positions(d);
    double u = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double r = x[b] - x[a];
        u += m[a] * m[b] * (1.0 / r + 0.5 * r * r);
      }
    }
    return u;
  };

  auto derivatives = [&](const std::vector<double>& d, std::vector<double>& grad, Matrix* hess) {
    const std::vector<double> x = positions(d);
    grad.assign(g, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const double r = x[b] - x[a];
        const double d1 = m[a] * m[b] * (r - 1.0 / (r * r));
        const double d2 = m[a] * m[b] * (1.0 + 2.0 / (r * r * r));
        // Pair (a, b) spans gaps a .. b-1.
        for (std::size_t t = a; t < b; ++t) {
          grad[t] += d1;
          if (hess) {
            for (std::size_t s = a; s < b; ++s) (*hess)(t, s) += d2;
          }
        }
      }
    }
    double worst = 0.0;
    for (double v : grad) worst = std::max(worst, std::abs(v));
    return worst;
  };

  int iterations = 0;
  double u = potential(gaps);
  std::vector<double> grad;
  for (; iterations < options.max_iterations; ++iterations) {
    Matrix hess(g, g);
    const double worst = derivatives(gaps, grad, &hess);
    if (worst <= 1e-3 * options.tolerance * masses.total() * masses.total()) break;

    std::vector<double> step;
    if (!cholesky_solve(hess, grad, step)) break;
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 60 && !moved; ++halving, t *= 0.5) {
      std::vector<double> trial(gaps);
      bool positive = true;
      for (std::size_t k = 0; k < g; ++k) {
        trial[k] -= t * step[k];
        positive = positive && trial[k] > 0.0;
      }
      if (!positive || trial == gaps) continue;
      const double ut = potential(trial);
      // Near the minimum the potential is flat to rounding; fall back to the
      // gradient as the merit function there.
      std::vector<double> gt;
      const bool flat = std::abs(ut - u) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(u);
      if (ut < u || (flat && derivatives(trial, gt, nullptr) < worst)) {
        gaps = std::move(trial);
        u = ut;
        moved = true;
      }
    }
    if (!moved) break;
  }

  // Polish on the per-body accelerations. The gap gradient sums forces, which
  // buries light bodies under the rounding of heavy pairs.
  std::vector<double> x = positions(gaps);
  auto accel = [&](const std::vector<double>& pos, std::vector<double>& a) {
    a.assign(n, 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const double d = pos[j] - pos[k];
        a[k] += m[j] * (1.0 / (std::abs(d) * d * d) - 1.0) * d;
      }
      worst = std::max(worst, std::abs(a[k]));
    }
    return worst;
  };
  std::vector<double> a;
  double worst = accel(x, a);
  const double total = masses.total();
  for (int polish = 0; polish < 4 && worst > 0.0; ++polish, ++iterations) {
    Matrix hess(n, n);
    std::vector<double> rhs(n);
    for (std::size_t k = 0; k < n; ++k) {
      rhs[k] = -m[k] * a[k];
      for (std::size_t j = 0; j < n; ++j) {
        // Mass-weighted translation term removes the null direction.
        hess(k, j) += m[k] * m[j] / total;
        if (j == k) continue;
        const double d = std::abs(x[j] - x[k]);
        const double c = m[k] * m[j] * (1.0 + 2.0 / (d * d * d));
        hess(k, j) -= c;
        hess(k, k) += c;
      }
    }
    std::vector<double> step;
    if (!cholesky_solve(hess, rhs, step)) break;
    std::vector<double> trial(x);
    for (std::size_t k = 0; k < n; ++k) trial[k] += step[k];
    std::vector<double> at;
    const double wt = accel(trial, at);
    if (!(wt < worst)) break;
    x = std::move(trial);
    a = std::move(at);
    worst = wt;
  }

  std::vector<Point> p(n);
  for (std::size_t k = 0; k < n; ++k) p[ordering[k]] = {x[k], 0.0};
  return finish(masses, PlanarConfiguration(std::move(p)), iterations, options);
}

KnownConfiguration known_from_string(const std::string& name) {
  if (name == "equilateral") return KnownConfiguration::Equilateral;
  if (name == "pentagon") return KnownConfiguration::Pentagon;
  if (name == "square_center") return KnownConfiguration::SquareCenter;
  throw Error(ErrorCode::Configuration, "unknown configuration '" + name + "'");
}

CentralConfiguration known_configuration(KnownConfiguration which, double parameter) {
  constexpr double kPi = std::numbers::pi;
  std::vector<Point> p;
  std::vector<double> m;
  switch (which) {
    case KnownConfiguration::Equilateral:
      p = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5 * std::sqrt(3.0)}};
      m = {1.0, 1.0, 1.0};
      break;
    case KnownConfiguration::Pentagon:
      for (int k = 0; k < 5; ++k) {
        p.push_back({std::cos(2.0 * kPi * k / 5.0), std::sin(2.0 * kPi * k / 5.0)});
      }
      m.assign(5, 1.0);
      break;
    case KnownConfiguration::SquareCenter:
      if (!(parameter > 0.0)) {
        throw Error(ErrorCode::Configuration, "central mass must be positive");
      }
      p = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}, {0.0, 0.0}};
      m = {1.0, 1.0, 1.0, 1.0, parameter};
      break;
  }
  return normalize(make_central(MassVector(std::move(m)), PlanarConfiguration(std::move(p))));
}

namespace {

std::vector<std::array<double, 3>> signature(const CentralConfiguration& cc) {
  std::vector<std::array<double, 3>> sig;
  for (std::size_t i = 0; i < cc.size(); ++i) {
    for (std::size_t j = i + 1; j < cc.size(); ++j) {
      const double a = cc.masses[i];
      const double b = cc.masses[j];
      sig.push_back({std::min(a, b), std::max(a, b), cc.configuration.distance(i, j)});
    }
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool same_shape(const std::vector<std::array<double, 3>>& a,
                const std::vector<std::array<double, 3>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      const double x = a[k][c];
      const double y = b[k][c];
      if (std::abs(x - y) > 1e-8 * std::max(std::abs(x), std::abs(y))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<SolveResult> dedup(const std::vector<SolveResult>& results) {
  std::vector<SolveResult> out;
  std::vector<std::vector<std::array<double, 3>>> keys;
  for (const SolveResult& r : results) {
    if (!(r.cc.masses == results.front().cc.masses)) {
      throw Error(ErrorCode::Configuration, "results were computed for different masses");
    }
    const auto key = signature(r.cc);
    bool merged = false;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (same_shape(keys[k], key)) {
        if (r.cc.gradient_residual < out[k].cc.gradient_residual) out[k] = r;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(r);
      keys.push_back(key);
    }
  }
  return out;
}

SolveOptions trial_options(const SolveOptions& base, std::size_t n, std::uint64_t trial) {
  SolveOptions o = base;
  o.seed = splitmix64(base.seed ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
  if (n >= 5) {
    static constexpr std::array<SeedShape, 4> kCycle{SeedShape::Disk, SeedShape::Ring,
                                                     SeedShape::Quadrilateral,
                                                     SeedShape::Triangular};
    o.shape = kCycle[trial % kCycle.size()];
  }
  return o;
}

std::vector<SolveResult> solve_campaign(const MassVector& masses, int trials,
                                        const SolveOptions& base, unsigned threads) {
  base.validate();
  if (trials < 0) throw Error(ErrorCode::Configuration, "trial count must be nonnegative");
  std::vector<std::optional<SolveResult>> slots(static_cast<std::size_t>(trials));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < slots.size(); t = next++) {
      slots[t] = find_cc(masses, trial_options(base, masses.size(), t));
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  std::vector<SolveResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<double> random_masses(std::uint64_t seed, std::uint64_t stream, std::size_t n,
                                  double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorCode::Configuration, "log-uniform bounds must satisfy 0 < lo <= hi");
  }
  std::mt19937_64 rng(splitmix64(seed) ^ splitmix64(stream + 0xD1B54A32D192ED03ULL));
  const double a = std::log(lo);
  const double b = std::log(hi);
  std::vector<double> m(n);
  for (double& v : m) v = std::exp(a + (b - a) * unit(rng));
  return m;
}

}  // namespace bwcc
