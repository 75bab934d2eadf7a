// Command-line front end: solve, verify, scan, graph.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bwcc/bwcc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CcDeleter {
  void operator()(bwcc_cc* p) const { bwcc_cc_free(p); }
};
struct ResultsDeleter {
  void operator()(bwcc_results* p) const { bwcc_results_free(p); }
};
struct ReportDeleter {
  void operator()(bwcc_report* p) const { bwcc_report_free(p); }
};
using CcPtr = std::unique_ptr<bwcc_cc, CcDeleter>;
using ResultsPtr = std::unique_ptr<bwcc_results, ResultsDeleter>;
using ReportPtr = std::unique_ptr<bwcc_report, ReportDeleter>;

void check(bwcc_status status) {
  if (status != BWCC_OK) {
    throw UsageError(std::string(bwcc_status_string(status)) + ": " + bwcc_last_error());
  }
}

std::string real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_real(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned thread_count() {
  if (const char* env = std::getenv("CC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_masses(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad mass '" + item + "'");
    }
    if (used != item.size()) throw UsageError("bad mass '" + item + "'");
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("masses must be positive and finite");
    out.push_back(v);
  }
  if (out.size() < 3) throw UsageError("need at least three masses");
  return out;
}

struct Verification {
  std::vector<double> eigenvalues;
  bool has_williams = false;
  double nu1 = NAN, nu2 = NAN, nu = NAN, max_identity_residual = NAN;
  bool williams_verdict = false;
  bool pbt = false, dst = false, lambda_consistent = true, verdict = false;
};

// One document, fields in schema order.
std::string document(const bwcc_cc* cc, bool normalized, const Verification* v) {
  const std::size_t n = bwcc_cc_size(cc);
  std::vector<double> m(n), xy(2 * n);
  check(bwcc_cc_masses(cc, m.data()));
  check(bwcc_cc_positions(cc, xy.data()));
  bwcc_hull hull = BWCC_HULL_COLLINEAR;
  check(bwcc_cc_hull(cc, &hull));

  std::string s = "  {\n    \"n\": " + std::to_string(n) + ",\n    \"masses\": [";
  for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + real(m[i]);
  s += "],\n    \"positions\": [";
  for (std::size_t i = 0; i < n; ++i) {
    s += (i ? ", [" : "[") + real(xy[2 * i]) + ", " + real(xy[2 * i + 1]) + "]";
  }
  s += "],\n    \"lambda\": " + real(bwcc_cc_lambda(cc));
  s += ",\n    \"normalized\": " + std::string(normalized ? "true" : "false");
  s += ",\n    \"gradient_residual\": " + real(bwcc_cc_residual(cc));
  s += ",\n    \"hull_class\": \"" + std::string(bwcc_hull_string(hull)) + "\"";
  if (!v) {
    s += ",\n    \"spectrum\": null,\n    \"williams\": null\n  }";
    return s;
  }
  s += ",\n    \"spectrum\": {\"eigenvalues\": [";
  for (std::size_t i = 0; i < v->eigenvalues.size(); ++i) {
    s += (i ? ", " : "") + real(v->eigenvalues[i]);
  }
  s += "], \"nu1\": " + real(v->nu1) + ", \"nu2\": " + real(v->nu2) + "}";
  if (v->has_williams) {
    s += ",\n    \"williams\": {\"nu\": " + real(v->nu) +
         ", \"max_identity_residual\": " + real(v->max_identity_residual) +
         ", \"verdict\": " + (v->williams_verdict ? "true" : "false") + "}";
  } else {
    s += ",\n    \"williams\": null";
  }
  s += ",\n    \"checks\": {\"pbt_ok\": " + std::string(v->pbt ? "true" : "false") +
       ", \"dst_ok\": " + (v->dst ? "true" : "false") +
       ", \"lambda_consistent\": " + (v->lambda_consistent ? "true" : "false") +
       ", \"verdict\": " + (v->verdict ? "true" : "false") + "}\n  }";
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  out.close();
  if (!out) throw UsageError("cannot write '" + path + "'");
}

std::string json_array(const std::vector<std::string>& docs) {
  if (docs.empty()) return "[]\n";
  std::string s = "[\n";
  for (std::size_t i = 0; i < docs.size(); ++i) s += docs[i] + (i + 1 < docs.size() ? ",\n" : "\n");
  return s + "]\n";
}

int cmd_solve(const std::string& masses_text, int trials, std::uint64_t seed, double tol,
              const std::string& out_path) {
  const std::vector<double> masses = parse_masses(masses_text);
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  bwcc_solve_options opt;
  bwcc_solve_options_default(&opt);
  opt.tolerance = tol;
  opt.seed = seed;

  bwcc_results* raw = nullptr;
  check(bwcc_solve_campaign(masses.data(), masses.size(), trials, &opt, thread_count(), &raw));
  const ResultsPtr all(raw);
  check(bwcc_results_unique(all.get(), &raw));
  const ResultsPtr unique(raw);

  std::vector<std::string> docs;
  for (std::size_t k = 0; k < bwcc_results_count(unique.get()); ++k) {
    const bwcc_cc* cc = bwcc_results_cc(unique.get(), k);
    docs.push_back(document(cc, bwcc_cc_normalized(cc), nullptr));
  }
  write_file(out_path, json_array(docs));
  return docs.empty() ? kExitNoConvergence : kExitOk;
}

Verification verify_one(const bwcc_cc* cc, const nlohmann::json& doc) {
  bwcc_report* raw = nullptr;
  check(bwcc_verify(cc, &raw));
  const ReportPtr report(raw);
  Verification v;
  v.eigenvalues.resize(bwcc_report_eigenvalue_count(report.get()));
  check(bwcc_report_eigenvalues(report.get(), v.eigenvalues.data()));
  v.has_williams = bwcc_report_has_williams(report.get());
  if (v.has_williams) {
    v.nu1 = bwcc_report_nu1(report.get());
    v.nu2 = bwcc_report_nu2(report.get());
    v.nu = bwcc_report_nu(report.get());
    v.max_identity_residual = bwcc_report_max_identity_residual(report.get());
  }
  v.pbt = bwcc_report_pbt_ok(report.get());
  v.dst = bwcc_report_dst_ok(report.get());
  v.williams_verdict = bwcc_report_verdict(report.get());
  if (doc.contains("lambda") && doc["lambda"].is_number()) {
    const double stored = doc["lambda"].get<double>();
    const double derived = bwcc_cc_lambda(cc);
    v.lambda_consistent = std::abs(stored - derived) <= 1e-10 * std::abs(derived);
  }
  v.verdict = v.williams_verdict && v.lambda_consistent;
  return v;
}

int cmd_verify(const std::string& in_path, const std::string& report_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + in_path + "'");
  nlohmann::json docs;
  try {
    docs = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("parse error: ") + e.what());
  }
  if (!docs.is_array()) throw UsageError("expected an array of documents");

  bool all_ok = true;
  std::vector<std::string> out;
  for (const auto& doc : docs) {
    std::vector<double> masses, xy;
    try {
      const std::size_t n = doc.at("n").get<std::size_t>();
      masses = doc.at("masses").get<std::vector<double>>();
      for (const auto& p : doc.at("positions")) {
        const auto pair = p.get<std::vector<double>>();
        if (pair.size() != 2) throw UsageError("positions must be [x, y] pairs");
        xy.push_back(pair[0]);
        xy.push_back(pair[1]);
      }
      if (masses.size() != n || xy.size() != 2 * n) throw UsageError("arrays not sized by n");
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed document: ") + e.what());
    }
    bwcc_cc* raw = nullptr;
    check(bwcc_cc_create(masses.data(), xy.data(), masses.size(), &raw));
    const CcPtr cc(raw);
    const Verification v = verify_one(cc.get(), doc);
    all_ok = all_ok && v.verdict;
    const bool normalized = doc.contains("normalized") && doc["normalized"].is_boolean() &&
                            doc["normalized"].get<bool>();
    out.push_back(document(cc.get(), normalized, &v));
  }
  write_file(report_path, json_array(out));
  return all_ok ? kExitOk : kExitVerifyFailed;
}

struct MassDistribution {
  double lo = 0.1;
  double hi = 10.0;
};

MassDistribution parse_distribution(const std::string& text) {
  const std::string prefix = "loguniform:";
  if (text.rfind(prefix, 0) != 0) throw UsageError("mass distribution must be loguniform:LO:HI");
  const std::string rest = text.substr(prefix.size());
  const std::size_t colon = rest.find(':');
  if (colon == std::string::npos) throw UsageError("mass distribution must be loguniform:LO:HI");
  MassDistribution d;
  try {
    std::size_t used = 0;
    const std::string a = rest.substr(0, colon);
    const std::string b = rest.substr(colon + 1);
    d.lo = std::stod(a, &used);
    if (used != a.size()) throw UsageError("bad bound");
    d.hi = std::stod(b, &used);
    if (used != b.size()) throw UsageError("bad bound");
  } catch (const std::logic_error&) {
    throw UsageError("bad bounds in '" + text + "'");
  }
  if (!(d.lo > 0.0) || !(d.lo < d.hi) || !std::isfinite(d.hi)) {
    throw UsageError("need 0 < LO < HI in '" + text + "'");
  }
  return d;
}

int cmd_scan(int trials, std::uint64_t seed, const std::string& dist_text,
             const std::string& out_path) {
  const MassDistribution dist = parse_distribution(dist_text);
  if (trials < 0) throw UsageError("--trials must be >= 0");
  constexpr std::size_t n = 5;
  bwcc_solve_options opt;
  bwcc_solve_options_default(&opt);
  opt.seed = seed;

  std::vector<std::string> rows(static_cast<std::size_t>(trials));
  std::vector<std::string> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < rows.size(); t = next++) {
      try {
        double m[n];
        check(bwcc_random_masses(seed, t, n, dist.lo, dist.hi, m));
        bwcc_results* raw = nullptr;
        check(bwcc_solve_trial(m, n, &opt, t, &raw));
        const ResultsPtr res(raw);
        const bwcc_cc* cc = bwcc_results_cc(res.get(), 0);
        bwcc_hull hull = BWCC_HULL_COLLINEAR;
        check(bwcc_cc_hull(cc, &hull));
        if (!bwcc_results_converged(res.get(), 0) || hull == BWCC_HULL_COLLINEAR) continue;
        bwcc_report* rep = nullptr;
        check(bwcc_verify(cc, &rep));
        const ReportPtr report(rep);
        std::string row = std::to_string(seed) + "," + std::to_string(t);
        for (double v : m) row += "," + csv_real(v);
        row += std::string(",") + bwcc_hull_string(hull);
        row += "," + csv_real(bwcc_cc_lambda(cc));
        row += "," + csv_real(bwcc_report_nu1(report.get()));
        row += "," + csv_real(bwcc_report_nu2(report.get()));
        row += "," + csv_real(bwcc_report_nu(report.get()));
        row += "," + csv_real(bwcc_report_min_chain_margin(report.get()));
        row += "," + csv_real(bwcc_report_max_identity_residual(report.get()));
        row += std::string(",") + (bwcc_report_pbt_ok(report.get()) ? "true" : "false");
        row += std::string(",") + (bwcc_report_dst_ok(report.get()) ? "true" : "false");
        rows[t] = row + "\n";
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
  };
  const unsigned count = std::min<unsigned>(thread_count(), std::max(1, trials));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  std::string text =
      "seed,trial,m1,m2,m3,m4,m5,hull_class,lambda,nu1,nu2,nu,min_chain_margin,"
      "max_identity_residual,pbt_ok,dst_ok\n";
  for (const std::string& r : rows) text += r;
  write_file(out_path, text);
  return kExitOk;
}

int cmd_graph(const std::string& dot_path) {
  char* dot = nullptr;
  check(bwcc_graph_dot(&dot));
  const std::string text(dot);
  bwcc_string_free(dot);
  write_file(dot_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central configurations of the planar n-body problem"};
  app.require_subcommand(1);

  std::string masses, out_path;
  int trials = 32;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  auto* solve = app.add_subcommand("solve", "find, deduplicate and store central configurations");
  solve->add_option("--masses", masses, "comma-separated masses")->required();
  solve->add_option("--trials", trials, "random starts")->capture_default_str();
  solve->add_option("--seed", seed, "campaign seed")->capture_default_str();
  solve->add_option("--tol", tol, "residual tolerance")->capture_default_str();
  solve->add_option("--out", out_path, "output JSON")->required();

  std::string in_path, report_path;
  auto* verify = app.add_subcommand("verify", "check stored configurations");
  verify->add_option("input", in_path, "input JSON")->required();
  verify->add_option("--report", report_path, "report JSON")->required();

  int scan_trials = 200;
  std::uint64_t scan_seed = 0;
  std::string dist = "loguniform:0.1:10", scan_out;
  auto* scan = app.add_subcommand("scan", "five-body campaign over random masses");
  scan->add_option("--trials", scan_trials, "mass draws")->capture_default_str();
  scan->add_option("--seed", scan_seed, "scan seed")->capture_default_str();
  scan->add_option("--mass-dist", dist, "loguniform:LO:HI")->capture_default_str();
  scan->add_option("--out", scan_out, "output CSV")->required();

  std::string dot_path;
  auto* graph = app.add_subcommand("graph", "export the fraction graph");
  graph->add_option("--dot", dot_path, "output DOT")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(masses, trials, seed, tol, out_path);
    if (verify->parsed()) return cmd_verify(in_path, report_path);
    if (scan->parsed()) return cmd_scan(scan_trials, scan_seed, dist, scan_out);
    if (graph->parsed()) return cmd_graph(dot_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
