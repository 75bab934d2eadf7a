#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "bwcc/bwcc.h"

TEST_CASE("status codes and messages") {
  const double masses[3] = {1.0, -1.0, 1.0};
  const double xy[6] = {0, 0, 1, 0, 0, 1};
  bwcc_cc* cc = nullptr;
  CHECK(bwcc_cc_create(masses, xy, 3, &cc) == BWCC_ERR_INVALID_MASS);
  CHECK(cc == nullptr);
  CHECK(std::string(bwcc_last_error()).size() > 0);
  CHECK(bwcc_cc_create(nullptr, xy, 3, &cc) == BWCC_ERR_ARGUMENT);

  const double ok[3] = {1.0, 1.0, 1.0};
  const double same[6] = {0, 0, 0, 0, 1, 0};
  CHECK(bwcc_cc_create(ok, same, 3, &cc) == BWCC_ERR_SINGULAR_DISTANCE);
  CHECK(std::string(bwcc_status_string(BWCC_ERR_CONFIGURATION)).size() > 0);
  CHECK(bwcc_cc_known(BWCC_KNOWN_SQUARE_CENTER, -1.0, &cc) == BWCC_ERR_CONFIGURATION);
}

TEST_CASE("known configuration round trip") {
  bwcc_cc* cc = nullptr;
  REQUIRE(bwcc_cc_known(BWCC_KNOWN_PENTAGON, 1.0, &cc) == BWCC_OK);
  CHECK(bwcc_cc_size(cc) == 5);
  CHECK(bwcc_cc_normalized(cc) == 1);
  CHECK(bwcc_cc_lambda(cc) == doctest::Approx(5.0));
  std::vector<double> m(5), xy(10);
  REQUIRE(bwcc_cc_masses(cc, m.data()) == BWCC_OK);
  REQUIRE(bwcc_cc_positions(cc, xy.data()) == BWCC_OK);

  bwcc_cc* copy = nullptr;
  REQUIRE(bwcc_cc_create(m.data(), xy.data(), 5, &copy) == BWCC_OK);
  CHECK(bwcc_cc_lambda(copy) == doctest::Approx(5.0).epsilon(1e-12));
  bwcc_hull hull;
  REQUIRE(bwcc_cc_hull(copy, &hull) == BWCC_OK);
  CHECK(hull == BWCC_HULL_STRICTLY_CONVEX);
  CHECK(std::string(bwcc_hull_string(hull)) == "strictly_convex");

  bwcc_report* rep = nullptr;
  REQUIRE(bwcc_verify(copy, &rep) == BWCC_OK);
  CHECK(bwcc_report_verdict(rep) == 1);
  CHECK(bwcc_report_has_williams(rep) == 1);
  CHECK(bwcc_report_nu(rep) > 0.0);
  CHECK(bwcc_report_nu1(rep) == doctest::Approx(bwcc_report_nu2(rep)).epsilon(1e-9));
  CHECK(bwcc_report_pbt_ok(rep) == 1);
  CHECK(bwcc_report_dst_ok(rep) == 1);
  REQUIRE(bwcc_report_eigenvalue_count(rep) == 5);
  std::vector<double> ev(5);
  REQUIRE(bwcc_report_eigenvalues(rep, ev.data()) == BWCC_OK);
  CHECK(std::abs(ev[0]) < 1e-10);
  CHECK(ev[1] == doctest::Approx(5.0).epsilon(1e-10));
  bwcc_report_free(rep);

  // A perturbed copy is no longer central.
  xy[0] += 0.01;
  bwcc_cc* bent = nullptr;
  REQUIRE(bwcc_cc_create(m.data(), xy.data(), 5, &bent) == BWCC_OK);
  REQUIRE(bwcc_verify(bent, &rep) == BWCC_OK);
  CHECK(bwcc_report_verdict(rep) == 0);
  bwcc_report_free(rep);

  bwcc_cc_free(bent);
  bwcc_cc_free(copy);
  bwcc_cc_free(cc);
}

TEST_CASE("campaign and unique results") {
  const double masses[5] = {1, 1, 1, 1, 1};
  bwcc_solve_options opt;
  bwcc_solve_options_default(&opt);
  CHECK(opt.tolerance == 1e-12);
  CHECK(opt.max_iterations == 200);
  opt.seed = 42;
  bwcc_results* all = nullptr;
  REQUIRE(bwcc_solve_campaign(masses, 5, 16, &opt, 2, &all) == BWCC_OK);
  CHECK(bwcc_results_count(all) == 16);
  bwcc_results* unique = nullptr;
  REQUIRE(bwcc_results_unique(all, &unique) == BWCC_OK);
  CHECK(bwcc_results_count(unique) >= 1);
  for (size_t k = 0; k < bwcc_results_count(unique); ++k) {
    CHECK(bwcc_results_converged(unique, k) == 1);
    CHECK(bwcc_cc_residual(bwcc_results_cc(unique, k)) <= 1e-12);
  }
  CHECK(bwcc_results_cc(unique, 1000) == nullptr);
  bwcc_results_free(unique);
  bwcc_results_free(all);

  opt.tolerance = -1.0;
  CHECK(bwcc_solve_campaign(masses, 5, 4, &opt, 1, &all) == BWCC_ERR_CONFIGURATION);
}

TEST_CASE("moulton through the C interface") {
  const double masses[4] = {1, 2, 3, 4};
  const size_t order[4] = {2, 0, 3, 1};
  bwcc_results* r = nullptr;
  REQUIRE(bwcc_moulton(masses, 4, order, &r) == BWCC_OK);
  REQUIRE(bwcc_results_count(r) == 1);
  CHECK(bwcc_results_converged(r, 0) == 1);
  bwcc_hull hull;
  REQUIRE(bwcc_cc_hull(bwcc_results_cc(r, 0), &hull) == BWCC_OK);
  CHECK(hull == BWCC_HULL_COLLINEAR);
  bwcc_results_free(r);
}

TEST_CASE("graph and masses") {
  size_t census[6];
  REQUIRE(bwcc_graph_census(census) == BWCC_OK);
  CHECK(census[0] == 30);
  CHECK(census[1] == 60);
  CHECK(census[2] == 20);
  CHECK(census[3] == 12);
  CHECK(census[4] == 4);
  CHECK(census[5] == 4);
  char* dot = nullptr;
  REQUIRE(bwcc_graph_dot(&dot) == BWCC_OK);
  CHECK(std::string(dot).rfind("graph", 0) == 0);
  bwcc_string_free(dot);

  double m[5];
  CHECK(bwcc_random_masses(1, 2, 5, 0.1, 10.0, m) == BWCC_OK);
  CHECK(bwcc_random_masses(1, 2, 5, 10.0, 0.1, m) == BWCC_ERR_CONFIGURATION);
}
