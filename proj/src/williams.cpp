#include "bwcc/williams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "bwcc/error.hpp"

namespace bwcc {

namespace {

void require_five(const CentralConfiguration& cc) {
  if (cc.size() != 5) {
    throw Error(ErrorCode::Dimension, "the Williams machinery is defined for five bodies");
  }
}

template <typename F>
void for_each_identity(F&& f) {
  for (std::size_t h = 0; h < 5; ++h) {
    std::array<std::size_t, 4> o{};
    std::size_t pos = 0;
    for (std::size_t a = 0; a < 5; ++a) {
      if (a != h) o[pos++] = a;
    }
    f(h, o[0], o[1], o[2], o[3]);
    f(h, o[0], o[2], o[1], o[3]);
    f(h, o[0], o[3], o[1], o[2]);
  }
}

double minor(const DistanceTable& t, std::size_t i, std::size_t j, std::size_t k,
             std::size_t l) {
  return t.s_shifted(i, k) * t.s_shifted(j, l) - t.s_shifted(i, l) * t.s_shifted(j, k);
}

}  // namespace

double fit_nu(const CentralConfiguration& cc) {
  require_five(cc);
  const DistanceTable table(cc.configuration);
  const AreaTable areas(cc.configuration);
  double num = 0.0;
  double den = 0.0;
  for_each_identity([&](std::size_t h, std::size_t i, std::size_t j, std::size_t k,
                        std::size_t l) {
    if (areas.collinear(i, j, h) || areas.collinear(k, l, h)) return;
    const double d = cc.masses[h] * areas.delta(i, j, h) * areas.delta(k, l, h);
    num += minor(table, i, j, k, l) * d;
    den += d * d;
  });
  if (!(den > 0.0)) {
    throw Error(ErrorCode::Degenerate, "every identity has a vanishing area product");
  }
  return num / den;
}

NuEstimate williams_nu(const CentralConfiguration& cc, const SpectralReport& report) {
  require_five(cc);
  if (!report.has_pair) {
    throw Error(ErrorCode::Dimension, "spectral report lacks the nontrivial pair");
  }
  const double wedge = wedge_norm_squared(cc.configuration, cc.masses);
  if (!(wedge > 0.0)) throw Error(ErrorCode::Degenerate, "collinear configuration");
  return NuEstimate{report.nu1 * report.nu2 / wedge, fit_nu(cc)};
}

std::vector<IdentityResidual> verify_identities(const CentralConfiguration& cc, double nu) {
  require_five(cc);
  const DistanceTable table(cc.configuration);
  const AreaTable areas(cc.configuration);
  std::vector<IdentityResidual> out;
  out.reserve(15);
  for_each_identity([&](std::size_t h, std::size_t i, std::size_t j, std::size_t k,
                        std::size_t l) {
    IdentityResidual r;
    r.hijkl = {h, i, j, k, l};
    r.minor = minor(table, i, j, k, l);
    r.area_product = cc.masses[h] * areas.delta(i, j, h) * areas.delta(k, l, h);
    const double rhs = nu * r.area_product;
    r.residual = std::abs(r.minor - rhs) / (std::abs(r.minor) + std::abs(rhs) + 1e-30);
    r.both_zero = std::abs(r.minor) <= kZeroMinor && std::abs(rhs) <= kZeroMinor;
    out.push_back(r);
  });
  return out;
}

namespace {

// 1-based canonical indices throughout the chain tables.
struct Product {
  int a, b, c, d;  // S'_ab S'_cd
};

struct Builder {
  const DistanceTable& table;
  const std::vector<std::size_t>& rel;
  std::vector<InequalityMargin> out;

  double s(int a, int b) const { return table.s_shifted(rel[a - 1], rel[b - 1]); }
  double r(int a, int b) const { return table.r(rel[a - 1], rel[b - 1]); }
  double value(const Product& p) const { return s(p.a, p.b) * s(p.c, p.d); }

  static std::string name(const Product& p) {
    std::ostringstream os;
    os << 'S' << p.a << p.b << "*S" << p.c << p.d;
    return os.str();
  }

  void push(std::string id, MarginKind kind, double lhs, double rhs, double margin) {
    InequalityMargin m{std::move(id), kind, lhs, rhs, margin, false};
    m.strict = margin > 1e-8 * std::max(std::abs(lhs), std::abs(rhs));
    out.push_back(std::move(m));
  }

  // lhs <= rhs
  void leq(const Product& lhs, const Product& rhs) {
    const double l = value(lhs);
    const double v = value(rhs);
    push(name(lhs) + " <= " + name(rhs), MarginKind::Product, l, v, v - l);
  }

  // r_ab > r_cd
  void longer(int a, int b, int c, int d) {
    const double x = r(a, b);
    const double y = r(c, d);
    std::ostringstream os;
    os << 'r' << a << b << " > r" << c << d;
    push(os.str(), MarginKind::Distance, x, y, x - y);
  }

  // r_ab > r_cd or r_ef > r_gh
  void longer_either(int a, int b, int c, int d, int e, int f, int g, int h) {
    const double m1 = r(a, b) - r(c, d);
    const double m2 = r(e, f) - r(g, h);
    std::ostringstream os;
    os << 'r' << a << b << " > r" << c << d << " or r" << e << f << " > r" << g << h;
    const bool first = m1 >= m2;
    push(os.str(), MarginKind::Distance, first ? r(a, b) : r(e, f),
         first ? r(c, d) : r(g, h), std::max(m1, m2));
  }

  // r_ab > r_cd implies r_ef > r_gh
  void implies(int a, int b, int c, int d, int e, int f, int g, int h) {
    const double premise = r(a, b) - r(c, d);
    const double conclusion = r(e, f) - r(g, h);
    std::ostringstream os;
    os << 'r' << a << b << " > r" << c << d << " => r" << e << f << " > r" << g << h;
    push(os.str(), MarginKind::Distance, r(e, f), r(g, h), std::max(-premise, conclusion));
  }

  // S'_ab < 0
  void negative(int a, int b) {
    std::ostringstream os;
    os << 'S' << a << b << " < 0";
    push(os.str(), MarginKind::Sign, s(a, b), 0.0, -s(a, b));
  }
};

void strictly_convex_chain(Builder& b) {
  for (int shift = 0; shift < 5; ++shift) {
    auto q = [shift](int k) { return (k - 1 + shift) % 5 + 1; };
    const Product p12_34{q(1), q(2), q(3), q(4)};
    const Product p13_24{q(1), q(3), q(2), q(4)};
    const Product p14_23{q(1), q(4), q(2), q(3)};
    b.leq(p13_24, p12_34);
    b.leq(p14_23, p13_24);
  }
  b.longer(1, 3, 1, 2);
  b.longer(1, 3, 2, 3);
  b.longer(2, 4, 2, 3);
  b.longer(2, 4, 3, 4);
  b.longer(3, 5, 3, 4);
  b.longer(3, 5, 4, 5);
  b.longer(1, 4, 4, 5);
  b.longer(1, 4, 1, 5);
  b.longer(2, 5, 1, 5);
  b.longer(2, 5, 1, 2);
  b.implies(1, 2, 2, 3, 1, 4, 3, 4);
  b.implies(2, 3, 3, 4, 2, 5, 4, 5);
  b.implies(3, 4, 4, 5, 1, 3, 1, 5);
  b.implies(4, 5, 1, 5, 2, 4, 1, 2);
  b.implies(1, 5, 1, 2, 3, 5, 2, 3);
}

void triangular_chain(Builder& b) {
  // a <= b <= c
  const std::array<std::array<Product, 3>, 5> chains{{
      {{{2, 3, 4, 5}, {2, 4, 3, 5}, {2, 5, 3, 4}}},
      {{{1, 3, 4, 5}, {1, 5, 3, 4}, {1, 4, 3, 5}}},
      {{{1, 2, 4, 5}, {1, 5, 2, 4}, {2, 5, 1, 4}}},
      {{{1, 3, 2, 5}, {1, 2, 3, 5}, {1, 5, 2, 3}}},
      {{{2, 3, 1, 4}, {1, 2, 3, 4}, {1, 3, 2, 4}}},
  }};
  for (const auto& c : chains) {
    b.leq(c[0], c[1]);
    b.leq(c[1], c[2]);
  }
  b.longer(1, 5, 4, 5);
  b.longer(2, 4, 4, 5);
  b.longer(1, 5, 1, 4);
  b.longer(2, 4, 2, 5);
  b.longer(1, 3, 1, 4);
  b.longer(2, 3, 2, 5);

  // At least two of S'_12, S'_23, S'_13 are negative.
  std::array<double, 3> neg{-b.s(1, 2), -b.s(2, 3), -b.s(1, 3)};
  std::sort(neg.begin(), neg.end());
  b.push("two of S12, S23, S13 < 0", MarginKind::Sign, neg[1], 0.0, neg[1]);
}

void quadrilateral_chain(Builder& b) {
  // a >= b <= c
  const std::array<std::array<Product, 3>, 4> valleys{{
      {{{2, 3, 4, 5}, {3, 5, 2, 4}, {2, 5, 3, 4}}},
      {{{1, 5, 3, 4}, {1, 3, 4, 5}, {1, 4, 3, 5}}},
      {{{1, 4, 2, 5}, {1, 5, 2, 4}, {1, 2, 4, 5}}},
      {{{1, 2, 3, 5}, {1, 3, 2, 5}, {1, 5, 2, 3}}},
  }};
  for (const auto& c : valleys) {
    b.leq(c[1], c[0]);
    b.leq(c[1], c[2]);
  }
  // a <= b >= c
  b.leq({1, 2, 3, 4}, {1, 3, 2, 4});
  b.leq({1, 4, 2, 3}, {1, 3, 2, 4});

  for (int t = 0; t < 4; ++t) {
    auto c = [t](int k) { return k == 5 ? 5 : (k - 1 + t) % 4 + 1; };
    b.longer(c(1), c(3), c(1), 5);
    b.longer_either(c(1), c(3), c(1), c(2), c(1), c(3), c(1), c(4));
  }
  b.negative(1, 3);
  b.negative(2, 4);
}

}  // namespace

std::vector<InequalityMargin> check_chain(const CentralConfiguration& cc, const HullClass& hull) {
  require_five(cc);
  if (hull.tag == HullTag::Collinear || hull.tag == HullTag::Polygonal) {
    throw Error(ErrorCode::UnsupportedClass,
                std::string("no inequality chain for hull class ") + to_string(hull.tag));
  }
  if (hull.relabeling.size() != 5) {
    throw Error(ErrorCode::Dimension, "relabeling must cover five bodies");
  }
  const DistanceTable table(cc.configuration);
  Builder b{table, hull.relabeling, {}};
  switch (hull.tag) {
    case HullTag::StrictlyConvex: strictly_convex_chain(b); break;
    case HullTag::TriangularHull: triangular_chain(b); break;
    case HullTag::QuadrilateralHull: quadrilateral_chain(b); break;
    default: break;
  }
  return std::move(b.out);
}

bool margin_holds(const InequalityMargin& m) {
  return m.margin >= -(1e-9 * std::max(std::abs(m.lhs), std::abs(m.rhs)) + 1e-12);
}

namespace {

template <typename Coefficient>
double pair_sum_residual(const CentralConfiguration& cc, Coefficient coeff) {
  const PlanarConfiguration& q = cc.configuration;
  const std::size_t n = cc.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == a || j == b) continue;
        sum += cc.masses[j] * coeff(a, b, j) * q.delta(a, b, j);
      }
      worst = std::max(worst, std::abs(sum));
    }
  }
  const double scale = q.scale();
  return worst / (scale * scale * scale);
}

}  // namespace

double first_kind_residual(const CentralConfiguration& cc) {
  const DistanceTable t(cc.configuration);
  // The second equation of each pair is the first with a and b exchanged.
  return pair_sum_residual(cc, [&](std::size_t a, std::size_t, std::size_t j) {
    return t.s_shifted(a, j);
  });
}

double kla_residual(const CentralConfiguration& cc) {
  const DistanceTable t(cc.configuration);
  return pair_sum_residual(cc, [&](std::size_t a, std::size_t b, std::size_t j) {
    return t.s(a, j) - t.s(b, j);
  });
}

std::string to_string(const Perm5& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('0' + v);
  return s;
}

Perm5 rotate_last(const Perm5& p) { return {p[0], p[1], p[4], p[2], p[3]}; }
Perm5 rotate_first(const Perm5& p) { return {p[2], p[0], p[1], p[3], p[4]}; }
Perm5 rotate_first_inverse(const Perm5& p) { return {p[1], p[2], p[0], p[3], p[4]}; }
Perm5 swap_pairs(const Perm5& p) { return {p[3], p[4], p[2], p[0], p[1]}; }
Perm5 flip_pairs(const Perm5& p) { return {p[1], p[0], p[2], p[4], p[3]}; }

std::vector<Perm5> even_permutations() {
  Perm5 p{1, 2, 3, 4, 5};
  std::vector<Perm5> out;
  do {
    int inversions = 0;
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) inversions += p[a] > p[b];
    }
    if (inversions % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<FractionValue> fraction_values(const CentralConfiguration& cc) {
  require_five(cc);
  const DistanceTable table(cc.configuration);
  const AreaTable areas(cc.configuration);
  std::vector<FractionValue> out;
  for (const Perm5& p : even_permutations()) {
    const std::size_t i = p[0] - 1, j = p[1] - 1, h = p[2] - 1, k = p[3] - 1, l = p[4] - 1;
    FractionValue f;
    f.indices = p;
    f.numerator = minor(table, i, j, k, l);
    f.denominator = cc.masses[h] * areas.delta(i, j, h) * areas.delta(k, l, h);
    if (!areas.collinear(i, j, h) && !areas.collinear(k, l, h)) {
      f.value = f.numerator / f.denominator;
    }
    out.push_back(f);
  }
  return out;
}

int FractionGraph::class_id(const Perm5& p) const {
  auto it = std::lower_bound(permutations.begin(), permutations.end(), p);
  if (it == permutations.end() || *it != p) {
    throw Error(ErrorCode::Configuration, "not an even permutation: " + to_string(p));
  }
  return class_of[static_cast<std::size_t>(it - permutations.begin())];
}

std::vector<std::vector<int>> FractionGraph::adjacency() const {
  std::vector<std::vector<int>> adj(classes.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::string FractionGraph::to_dot() const {
  std::ostringstream os;
  os << "graph fractions {\n";
  for (const auto& c : classes) os << "  \"" << to_string(c[0]) << "\";\n";
  for (const auto& [a, b] : edges) {
    os << "  \"" << to_string(classes[a][0]) << "\" -- \"" << to_string(classes[b][0])
       << "\";\n";
  }
  os << "}\n";
  return os.str();
}

FractionGraph build_fraction_graph() {
  FractionGraph g;
  g.permutations = even_permutations();
  g.class_of.assign(g.permutations.size(), -1);

  // Classes are numbered in order of their smallest member, which is the
  // lexicographic order of the labels.
  for (std::size_t idx = 0; idx < g.permutations.size(); ++idx) {
    if (g.class_of[idx] >= 0) continue;
    const Perm5& p = g.permutations[idx];
    const Perm5 partner = swap_pairs(p);
    const int id = static_cast<int>(g.classes.size());
    g.classes.push_back({std::min(p, partner), std::max(p, partner)});
    g.class_of[idx] = id;
    auto it = std::lower_bound(g.permutations.begin(), g.permutations.end(), partner);
    g.class_of[static_cast<std::size_t>(it - g.permutations.begin())] = id;
  }

  std::set<std::pair<int, int>> edges;
  for (const Perm5& p : g.permutations) {
    const int a = g.class_id(p);
    const int b = g.class_id(rotate_last(p));
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  g.edges.assign(edges.begin(), edges.end());

  std::set<std::array<int, 3>> triangles;
  for (const Perm5& p : g.permutations) {
    std::array<int, 3> t{g.class_id(p), g.class_id(rotate_last(p)),
                         g.class_id(rotate_last(rotate_last(p)))};
    std::sort(t.begin(), t.end());
    triangles.insert(t);
  }
  g.triangles.assign(triangles.begin(), triangles.end());

  std::set<std::array<int, 5>> pentagons;
  for (const Perm5& start : g.permutations) {
    Perm5 p = start;
    std::array<int, 5> cycle{};
    for (int step = 0; step < 5; ++step) {
      cycle[step] = g.class_id(p);
      p = step % 2 == 0 ? rotate_last(p) : rotate_first(p);
    }
    // The walk closes on the partner of its start.
    if (g.class_id(p) != cycle[0]) {
      throw Error(ErrorCode::Integrity, "pentagon walk did not close");
    }
    // Canonical rotation and direction so each face is stored once.
    const auto low = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), low, cycle.end());
    if (cycle[4] < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
    pentagons.insert(cycle);
  }
  g.pentagons.assign(pentagons.begin(), pentagons.end());
  return g;
}

WilliamsCertificate certify(const CentralConfiguration& cc) {
  require_five(cc);
  if (!is_normalized(cc) && !cc.normalized) {
    throw Error(ErrorCode::NormalizationRequired, "certificate needs a normalized configuration");
  }
  WilliamsCertificate cert;
  cert.hull = classify_hull(cc.configuration);
  cert.collinear_threshold = collinear_threshold(cc.configuration);
  if (cert.hull.tag == HullTag::Collinear) {
    throw Error(ErrorCode::Degenerate, "collinear configuration");
  }

  bool spectral_ok = true;
  try {
    const SpectralReport report =
        spectrum(cc.masses, build_shifted_bwc(cc.masses, cc.configuration));
    cert.nu = williams_nu(cc, report);
    cert.nu1 = report.nu1;
    cert.nu2 = report.nu2;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Integrity) throw;
    spectral_ok = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cert.nu = NuEstimate{nan, fit_nu(cc)};
    cert.nu1 = cert.nu2 = nan;
  }

  cert.identities = verify_identities(cc, spectral_ok ? cert.nu.spectral : cert.nu.ratio);
  bool identities_ok = true;
  for (const IdentityResidual& r : cert.identities) {
    if (r.both_zero) continue;
    cert.max_identity_residual = std::max(cert.max_identity_residual, r.residual);
    identities_ok = identities_ok && r.residual < 1e-8;
  }

  cert.chain_margins = check_chain(cc, cert.hull);
  bool chains_ok = true;
  cert.min_chain_margin = INFINITY;
  for (const InequalityMargin& m : cert.chain_margins) {
    cert.min_chain_margin = std::min(cert.min_chain_margin, m.margin);
    chains_ok = chains_ok && margin_holds(m);
  }

  const double M = cc.masses.total();
  const bool nu_ok = spectral_ok && cert.nu.spectral > 0.0 &&
                     std::abs(cert.nu.spectral - cert.nu.ratio) < 1e-8 * std::abs(cert.nu.spectral) &&
                     cert.nu1 > 1e-8 * M && cert.nu2 > 1e-8 * M;
  cert.verdict = spectral_ok && identities_ok && chains_ok && nu_ok;
  return cert;
}

}  // namespace bwcc
