#pragma once

#include <cstddef>
#include <vector>

#include "bwcc/core.hpp"
#include "bwcc/linalg.hpp"

namespace bwcc {

enum class BwcKind { Plain, Shifted };

// The Brehm-Wintner-Conley matrix Z (or its shifted form). Off-diagonal entry
// (i, j) is -m_i S_ij (plain) or -m_i (S_ij - 1) (shifted); the diagonal makes
// every column sum to zero, i.e. U Z = 0. Z mu is symmetric.
struct BwcMatrix {
  Matrix entries;
  BwcKind kind = BwcKind::Plain;

  std::size_t size() const noexcept { return entries.rows(); }
  double trace() const;
};

BwcMatrix build_bwc(const MassVector& masses, const PlanarConfiguration& config);

// Uses S_ij - 1 throughout, so it equals Z - M I only for configurations
// already scaled to lambda = M.
BwcMatrix build_shifted_bwc(const MassVector& masses, const PlanarConfiguration& config);

// The translation matrix I = Id - m^T (1,...,1) / M, kept implicit.
class TranslationMatrix {
 public:
  explicit TranslationMatrix(MassVector masses) : masses_(std::move(masses)) {}

  // Row vector times I: subtracts the mass-weighted mean.
  std::vector<double> apply(std::span<const double> row) const;
  Matrix dense() const;

 private:
  MassVector masses_;
};

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  // Only for the shifted matrix of five bodies.
  bool has_pair = false;
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::vector<double> phi;
  std::vector<double> psi;
  // Largest magnitude among the three eigenvalues matched to the structural
  // zeros, relative to ||Z||.
  double kernel_residual = 0.0;
};

// Eigenvalues of Z through the similar symmetric matrix mu^{-1/2} (Z mu) mu^{-1/2}.
// For a shifted five-body matrix also extracts nu1 <= nu2 and the mass-
// orthonormal covectors with Z mu = nu1 Phi (x) Phi + nu2 Psi (x) Psi.
SpectralReport spectrum(const MassVector& masses, const BwcMatrix& bwc);

// Lemma-style check Delta^{kl} = a (Phi_k Psi_l - Phi_l Psi_k) with
// |a| = sqrt(|U^X^Y|^2 / prod m). Returns the worst residual over the ten
// pairs divided by scale^2. The fitted factor a is written to factor_out.
double lemma1_check(const CentralConfiguration& cc, const SpectralReport& report,
                    double* factor_out = nullptr);

}  // namespace bwcc
