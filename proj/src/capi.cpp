#include "bwcc/bwcc.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <thread>

#include "bwcc/bwc.hpp"
#include "bwcc/error.hpp"
#include "bwcc/geometry.hpp"
#include "bwcc/solver.hpp"
#include "bwcc/williams.hpp"

struct bwcc_cc {
  bwcc::CentralConfiguration cc;
};

struct bwcc_results {
  std::vector<bwcc::SolveResult> items;
  std::vector<bwcc_cc> handles;
};

struct bwcc_report {
  double lambda = 0.0;
  std::vector<double> eigenvalues;
  std::optional<bwcc::WilliamsCertificate> williams;
  bool pbt = false;
  bool dst = false;
  bool verdict = false;
  bwcc::HullTag hull = bwcc::HullTag::Collinear;
};

namespace {

thread_local std::string last_error;

bwcc_status fail(bwcc_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
bwcc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return BWCC_OK;
  } catch (const bwcc::Error& e) {
    return fail(static_cast<bwcc_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BWCC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BWCC_ERR_INTERNAL, e.what());
  }
}

bwcc::MassVector masses_from(const double* masses, std::size_t n) {
  return bwcc::MassVector(std::vector<double>(masses, masses + n));
}

bwcc_hull hull_code(bwcc::HullTag tag) {
  switch (tag) {
    case bwcc::HullTag::Collinear: return BWCC_HULL_COLLINEAR;
    case bwcc::HullTag::TriangularHull: return BWCC_HULL_TRIANGULAR;
    case bwcc::HullTag::QuadrilateralHull: return BWCC_HULL_QUADRILATERAL;
    case bwcc::HullTag::StrictlyConvex: return BWCC_HULL_STRICTLY_CONVEX;
    case bwcc::HullTag::Polygonal: return BWCC_HULL_POLYGONAL;
  }
  return BWCC_HULL_COLLINEAR;
}

bwcc::SolveOptions options_from(const bwcc_solve_options* o) {
  bwcc::SolveOptions out;
  if (o) {
    out.tolerance = o->tolerance;
    out.max_iterations = o->max_iterations;
    out.damping = o->damping;
    out.min_separation = o->min_separation;
    out.seed = o->seed;
  }
  return out;
}

bwcc_results* wrap(std::vector<bwcc::SolveResult> items) {
  auto* r = new bwcc_results{std::move(items), {}};
  r->handles.reserve(r->items.size());
  for (const auto& item : r->items) r->handles.push_back(bwcc_cc{item.cc});
  return r;
}

// Residual above which a document is not treated as central.
constexpr double kVerifyResidual = 1e-9;

}  // namespace

extern "C" {

const char* bwcc_last_error(void) { return last_error.c_str(); }

const char* bwcc_status_string(bwcc_status status) {
  if (status == BWCC_OK) return "ok";
  if (status == BWCC_ERR_ARGUMENT) return "invalid argument";
  if (status == BWCC_ERR_INTERNAL) return "internal error";
  if (status >= BWCC_ERR_DIMENSION && status <= BWCC_ERR_CONFIGURATION) {
    return bwcc::to_string(static_cast<bwcc::ErrorCode>(static_cast<int>(status)));
  }
  return "unknown status";
}

const char* bwcc_hull_string(bwcc_hull hull) {
  switch (hull) {
    case BWCC_HULL_COLLINEAR: return bwcc::to_string(bwcc::HullTag::Collinear);
    case BWCC_HULL_TRIANGULAR: return bwcc::to_string(bwcc::HullTag::TriangularHull);
    case BWCC_HULL_QUADRILATERAL: return bwcc::to_string(bwcc::HullTag::QuadrilateralHull);
    case BWCC_HULL_STRICTLY_CONVEX: return bwcc::to_string(bwcc::HullTag::StrictlyConvex);
    case BWCC_HULL_POLYGONAL: return bwcc::to_string(bwcc::HullTag::Polygonal);
  }
  return "unknown";
}

void bwcc_solve_options_default(bwcc_solve_options* options) {
  if (!options) return;
  const bwcc::SolveOptions d;
  options->tolerance = d.tolerance;
  options->max_iterations = d.max_iterations;
  options->damping = d.damping;
  options->min_separation = d.min_separation;
  options->seed = d.seed;
}

bwcc_status bwcc_cc_create(const double* masses, const double* xy, size_t n, bwcc_cc** out) {
  if (!masses || !xy || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<bwcc::Point> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new bwcc_cc{bwcc::make_central(masses_from(masses, n), bwcc::PlanarConfiguration(p))};
  });
}

bwcc_status bwcc_cc_known(bwcc_known which, double parameter, bwcc_cc** out) {
  if (!out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    bwcc::KnownConfiguration k;
    switch (which) {
      case BWCC_KNOWN_EQUILATERAL: k = bwcc::KnownConfiguration::Equilateral; break;
      case BWCC_KNOWN_PENTAGON: k = bwcc::KnownConfiguration::Pentagon; break;
      case BWCC_KNOWN_SQUARE_CENTER: k = bwcc::KnownConfiguration::SquareCenter; break;
      default: throw bwcc::Error(bwcc::ErrorCode::Configuration, "unknown configuration");
    }
    *out = new bwcc_cc{bwcc::known_configuration(k, parameter)};
  });
}

bwcc_status bwcc_cc_normalize(const bwcc_cc* cc, bwcc_cc** out) {
  if (!cc || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new bwcc_cc{bwcc::normalize(cc->cc)}; });
}

void bwcc_cc_free(bwcc_cc* cc) { delete cc; }

size_t bwcc_cc_size(const bwcc_cc* cc) { return cc ? cc->cc.size() : 0; }

bwcc_status bwcc_cc_masses(const bwcc_cc* cc, double* out) {
  if (!cc || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  for (std::size_t i = 0; i < cc->cc.size(); ++i) out[i] = cc->cc.masses[i];
  return BWCC_OK;
}

bwcc_status bwcc_cc_positions(const bwcc_cc* cc, double* xy_out) {
  if (!cc || !xy_out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  for (std::size_t i = 0; i < cc->cc.size(); ++i) {
    xy_out[2 * i] = cc->cc.configuration[i].x;
    xy_out[2 * i + 1] = cc->cc.configuration[i].y;
  }
  return BWCC_OK;
}

double bwcc_cc_lambda(const bwcc_cc* cc) {
  return cc ? cc->cc.lambda : std::numeric_limits<double>::quiet_NaN();
}

double bwcc_cc_residual(const bwcc_cc* cc) {
  return cc ? cc->cc.gradient_residual : std::numeric_limits<double>::quiet_NaN();
}

int bwcc_cc_normalized(const bwcc_cc* cc) { return cc && cc->cc.normalized ? 1 : 0; }

bwcc_status bwcc_cc_hull(const bwcc_cc* cc, bwcc_hull* out) {
  if (!cc || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = hull_code(bwcc::classify_hull(cc->cc.configuration).tag); });
}

bwcc_status bwcc_solve_campaign(const double* masses, size_t n, int trials,
                                const bwcc_solve_options* options, unsigned threads,
                                bwcc_results** out) {
  if (!masses || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const bwcc::MassVector m = masses_from(masses, n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    *out = wrap(bwcc::solve_campaign(m, trials, options_from(options), threads));
  });
}

bwcc_status bwcc_solve_trial(const double* masses, size_t n, const bwcc_solve_options* options,
                             uint64_t trial, bwcc_results** out) {
  if (!masses || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const bwcc::MassVector m = masses_from(masses, n);
    std::vector<bwcc::SolveResult> one;
    one.push_back(bwcc::find_cc(m, bwcc::trial_options(options_from(options), n, trial)));
    *out = wrap(std::move(one));
  });
}

bwcc_status bwcc_results_unique(const bwcc_results* results, bwcc_results** out) {
  if (!results || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<bwcc::SolveResult> kept;
    for (const auto& r : results->items) {
      if (r.converged && r.hull.tag != bwcc::HullTag::Collinear) kept.push_back(r);
    }
    *out = wrap(kept.empty() ? kept : bwcc::dedup(kept));
  });
}

bwcc_status bwcc_moulton(const double* masses, size_t n, const size_t* ordering,
                         bwcc_results** out) {
  if (!masses || !ordering || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::size_t> order(ordering, ordering + n);
    std::vector<bwcc::SolveResult> one;
    one.push_back(bwcc::moulton_collinear(masses_from(masses, n), order));
    *out = wrap(std::move(one));
  });
}

size_t bwcc_results_count(const bwcc_results* results) {
  return results ? results->items.size() : 0;
}

int bwcc_results_converged(const bwcc_results* results, size_t index) {
  if (!results || index >= results->items.size()) return 0;
  return results->items[index].converged ? 1 : 0;
}

int bwcc_results_iterations(const bwcc_results* results, size_t index) {
  if (!results || index >= results->items.size()) return -1;
  return results->items[index].iterations;
}

const bwcc_cc* bwcc_results_cc(const bwcc_results* results, size_t index) {
  if (!results || index >= results->handles.size()) return nullptr;
  return &results->handles[index];
}

void bwcc_results_free(bwcc_results* results) { delete results; }

bwcc_status bwcc_random_masses(uint64_t seed, uint64_t stream, size_t n, double lo, double hi,
                               double* out) {
  if (!out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::vector<double> m = bwcc::random_masses(seed, stream, n, lo, hi);
    std::copy(m.begin(), m.end(), out);
  });
}

bwcc_status bwcc_verify(const bwcc_cc* cc, bwcc_report** out) {
  if (!cc || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto report = std::make_unique<bwcc_report>();
    report->lambda = cc->cc.lambda;
    const bwcc::CentralConfiguration norm = bwcc::normalize(cc->cc);
    report->hull = bwcc::classify_hull(norm.configuration).tag;
    report->eigenvalues =
        bwcc::spectrum(norm.masses, bwcc::build_bwc(norm.masses, norm.configuration)).eigenvalues;
    report->pbt = bwcc::perpendicular_bisector_all(norm.configuration, norm.masses);
    report->dst = bwcc::disk_sector_all(norm);
    bool ok = norm.gradient_residual <= kVerifyResidual && report->pbt && report->dst;
    if (norm.size() == 5 && report->hull != bwcc::HullTag::Collinear) {
      report->williams = bwcc::certify(norm);
      ok = ok && report->williams->verdict;
    }
    report->verdict = ok;
    *out = report.release();
  });
}

void bwcc_report_free(bwcc_report* report) { delete report; }

size_t bwcc_report_eigenvalue_count(const bwcc_report* report) {
  return report ? report->eigenvalues.size() : 0;
}

bwcc_status bwcc_report_eigenvalues(const bwcc_report* report, double* out) {
  if (!report || !out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  std::copy(report->eigenvalues.begin(), report->eigenvalues.end(), out);
  return BWCC_OK;
}

double bwcc_report_lambda(const bwcc_report* report) {
  return report ? report->lambda : std::numeric_limits<double>::quiet_NaN();
}

int bwcc_report_has_williams(const bwcc_report* report) {
  return report && report->williams ? 1 : 0;
}

#define BWCC_WILLIAMS_FIELD(name, expr)                                        \
  double bwcc_report_##name(const bwcc_report* report) {                      \
    if (!report || !report->williams) return std::numeric_limits<double>::quiet_NaN(); \
    return report->williams->expr;                                            \
  }

BWCC_WILLIAMS_FIELD(nu1, nu1)
BWCC_WILLIAMS_FIELD(nu2, nu2)
BWCC_WILLIAMS_FIELD(nu, nu.spectral)
BWCC_WILLIAMS_FIELD(nu_ratio, nu.ratio)
BWCC_WILLIAMS_FIELD(max_identity_residual, max_identity_residual)
BWCC_WILLIAMS_FIELD(min_chain_margin, min_chain_margin)

#undef BWCC_WILLIAMS_FIELD

int bwcc_report_pbt_ok(const bwcc_report* report) { return report && report->pbt ? 1 : 0; }
int bwcc_report_dst_ok(const bwcc_report* report) { return report && report->dst ? 1 : 0; }
int bwcc_report_verdict(const bwcc_report* report) { return report && report->verdict ? 1 : 0; }

bwcc_hull bwcc_report_hull(const bwcc_report* report) {
  return report ? hull_code(report->hull) : BWCC_HULL_COLLINEAR;
}

bwcc_status bwcc_graph_dot(char** out) {
  if (!out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string dot = bwcc::build_fraction_graph().to_dot();
    char* s = new char[dot.size() + 1];
    std::memcpy(s, dot.c_str(), dot.size() + 1);
    *out = s;
  });
}

bwcc_status bwcc_graph_census(size_t out[6]) {
  if (!out) return fail(BWCC_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const bwcc::FractionGraph g = bwcc::build_fraction_graph();
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& nb : g.adjacency()) {
      lo = std::min(lo, nb.size());
      hi = std::max(hi, nb.size());
    }
    out[0] = g.classes.size();
    out[1] = g.edges.size();
    out[2] = g.triangles.size();
    out[3] = g.pentagons.size();
    out[4] = lo;
    out[5] = hi;
  });
}

void bwcc_string_free(char* s) { delete[] s; }

}  // extern "C"
