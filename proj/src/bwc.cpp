#include "bwcc/bwc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bwcc/error.hpp"

namespace bwcc {

namespace {

BwcMatrix assemble(const MassVector& masses, const PlanarConfiguration& config,
                   BwcKind kind) {
  const std::size_t n = config.size();
  if (masses.size() != n) {
    throw Error(ErrorCode::Dimension, "mass vector and configuration differ in size");
  }
  const DistanceTable table(config);
  BwcMatrix z{Matrix(n, n), kind};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double s = kind == BwcKind::Plain ? table.s(i, j) : table.s_shifted(i, j);
      z.entries(i, j) = -masses[i] * s;
    }
  }
  // Column sums vanish: Sigma_j = sum_{k != j} m_k S_kj.
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) sum += z.entries(k, j);
    }
    z.entries(j, j) = -sum;
  }
  return z;
}

}  // namespace

double BwcMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < size(); ++i) t += entries(i, i);
  return t;
}

BwcMatrix build_bwc(const MassVector& masses, const PlanarConfiguration& config) {
  return assemble(masses, config, BwcKind::Plain);
}

BwcMatrix build_shifted_bwc(const MassVector& masses, const PlanarConfiguration& config) {
  return assemble(masses, config, BwcKind::Shifted);
}

std::vector<double> TranslationMatrix::apply(std::span<const double> row) const {
  if (row.size() != masses_.size()) {
    throw Error(ErrorCode::Dimension, "row length does not match the number of bodies");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) mean += masses_[i] * row[i];
  mean /= masses_.total();
  std::vector<double> out(row.begin(), row.end());
  for (double& v : out) v -= mean;
  return out;
}

Matrix TranslationMatrix::dense() const {
  const std::size_t n = masses_.size();
  Matrix t = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) -= masses_[i] / masses_.total();
  }
  return t;
}

SpectralReport spectrum(const MassVector& masses, const BwcMatrix& bwc) {
  const std::size_t n = bwc.size();
  if (masses.size() != n) {
    throw Error(ErrorCode::Dimension, "mass vector and matrix differ in size");
  }
  // A_ij = Z_ij m_j / sqrt(m_i m_j)
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = bwc.entries(i, j) * std::sqrt(masses[j] / masses[i]);
    }
  }
  const double norm = a.frobenius_norm();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * norm) {
        throw Error(ErrorCode::Integrity, "Z mu is not symmetric");
      }
      a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
    }
  }

  const SymmetricEigen eig = jacobi_eigen(a);
  SpectralReport report;
  report.eigenvalues = eig.values;

  if (bwc.kind != BwcKind::Shifted || n != 5) return report;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(eig.values[x]) < std::abs(eig.values[y]);
  });
  const double znorm = bwc.entries.frobenius_norm();
  report.kernel_residual =
      znorm > 0.0 ? std::abs(eig.values[order[2]]) / znorm : 0.0;
  if (report.kernel_residual > 1e-8) {
    throw Error(ErrorCode::Integrity,
                "shifted matrix is not of rank two; the configuration is not central");
  }

  std::size_t lo = order[3];
  std::size_t hi = order[4];
  if (eig.values[lo] > eig.values[hi]) std::swap(lo, hi);
  report.has_pair = true;
  report.nu1 = eig.values[lo];
  report.nu2 = eig.values[hi];
  report.phi.resize(n);
  report.psi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(masses[i]);
    report.phi[i] = root * eig.vectors(i, lo);
    report.psi[i] = root * eig.vectors(i, hi);
  }
  return report;
}

double lemma1_check(const CentralConfiguration& cc, const SpectralReport& report,
                    double* factor_out) {
  if (cc.size() != 5 || !report.has_pair) {
    throw Error(ErrorCode::Dimension, "the area/covector check needs five bodies");
  }
  const double wedge = wedge_norm_squared(cc.configuration, cc.masses);
  if (!(wedge > 0.0)) {
    throw Error(ErrorCode::Degenerate, "collinear configuration: the factor a vanishes");
  }
  const double magnitude = std::sqrt(wedge / cc.masses.product());
  const AreaTable table(cc.configuration);

  std::vector<double> cross;
  std::vector<double> area;
  std::size_t best = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = k + 1; l < 5; ++l) {
      cross.push_back(report.phi[k] * report.psi[l] - report.phi[l] * report.psi[k]);
      area.push_back(table.pair(k, l));
      if (std::abs(area.back()) > std::abs(area[best])) best = area.size() - 1;
    }
  }
  const double a = area[best] * cross[best] >= 0.0 ? magnitude : -magnitude;
  const double scale = cc.configuration.scale();
  double worst = 0.0;
  for (std::size_t p = 0; p < area.size(); ++p) {
    worst = std::max(worst, std::abs(area[p] - a * cross[p]));
  }
  if (factor_out) *factor_out = a;
  return worst / (scale * scale);
}

}  // namespace bwcc
