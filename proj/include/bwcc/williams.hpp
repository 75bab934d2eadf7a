#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bwcc/bwc.hpp"
#include "bwcc/core.hpp"
#include "bwcc/geometry.hpp"

namespace bwcc {

// One of the fifteen identities
//   S'_ik S'_jl - S'_il S'_jk = nu m_h Delta_ijh Delta_klh   (S' = S - 1)
// indexed by the missing body h and the split {i, j} | {k, l}. Indices 0-based.
struct IdentityResidual {
  std::array<std::size_t, 5> hijkl{};
  double minor = 0.0;        // left-hand side
  double area_product = 0.0; // m_h Delta_ijh Delta_klh
  double residual = 0.0;     // |minor - nu area| / (|minor| + |nu area| + 1e-30)
  bool both_zero = false;    // both sides below the zero threshold
};

struct NuEstimate {
  double spectral = 0.0;  // nu1 nu2 / |U^X^Y|^2
  double ratio = 0.0;     // least squares over well-conditioned identities
};

NuEstimate williams_nu(const CentralConfiguration& cc, const SpectralReport& report);

// Least-squares fit of nu from the identities alone.
double fit_nu(const CentralConfiguration& cc);

// Products of shifted coefficients treated as zero when comparing signs.
inline constexpr double kZeroMinor = 1e-8;

std::vector<IdentityResidual> verify_identities(const CentralConfiguration& cc, double nu);

enum class MarginKind { Product, Distance, Sign };

// Signed margin of one inequality; positive means it holds strictly.
struct InequalityMargin {
  std::string id;
  MarginKind kind = MarginKind::Product;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool strict = false;  // margin > 1e-8 max(|lhs|, |rhs|)
};

// Inequalities for the hull class, evaluated in its canonical numbering:
// the product chains, the distance statements and the sign statements.
std::vector<InequalityMargin> check_chain(const CentralConfiguration& cc, const HullClass& hull);

bool margin_holds(const InequalityMargin& m);

// Williams first-kind sums and the Krediet-Laura-Andoyer sums, worst over all
// ordered pairs, divided by scale^3.
double first_kind_residual(const CentralConfiguration& cc);
double kla_residual(const CentralConfiguration& cc);

using Perm5 = std::array<int, 5>;  // labels 1..5

std::string to_string(const Perm5& p);

struct FractionValue {
  Perm5 indices{};
  double numerator = 0.0;
  double denominator = 0.0;
  std::optional<double> value;  // absent when the denominator is indeterminate
};

// The sixty fractions (S'_ik S'_jl - S'_il S'_jk) / (m_h Delta_ijh Delta_klh)
// over even permutations (i, j, h, k, l), in lexicographic order.
std::vector<FractionValue> fraction_values(const CentralConfiguration& cc);

// Relations between fraction labels.
Perm5 rotate_last(const Perm5& p);   // ijhkl -> ijlhk
Perm5 rotate_first(const Perm5& p);  // ijhkl -> hijkl
Perm5 rotate_first_inverse(const Perm5& p);
Perm5 swap_pairs(const Perm5& p);    // ijhkl -> klhij
Perm5 flip_pairs(const Perm5& p);    // ijhkl -> jihlk

std::vector<Perm5> even_permutations();

struct FractionGraph {
  std::vector<Perm5> permutations;        // the 60 labels
  std::vector<int> class_of;              // per label
  std::vector<std::array<Perm5, 2>> classes;  // members, smaller first
  std::vector<std::pair<int, int>> edges; // a < b
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 5>> pentagons;

  int class_id(const Perm5& p) const;
  std::vector<std::vector<int>> adjacency() const;
  std::string to_dot() const;
};

// Labels identified with their swap_pairs image; edges from rotate_last;
// triangles are rotate_last orbits, pentagons the alternating
// rotate_last / rotate_first walks.
FractionGraph build_fraction_graph();

struct WilliamsCertificate {
  NuEstimate nu;
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::vector<IdentityResidual> identities;
  double max_identity_residual = 0.0;
  std::vector<InequalityMargin> chain_margins;
  double min_chain_margin = 0.0;
  HullClass hull;
  double collinear_threshold = 0.0;
  double zero_threshold = kZeroMinor;
  bool verdict = false;
};

// Full five-body check of a normalized central configuration.
WilliamsCertificate certify(const CentralConfiguration& cc);

}  // namespace bwcc
