#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gslab/asymptotics.hpp"
#include "gslab/errors.hpp"
#include "gslab/functionals.hpp"
#include "gslab/talenti.hpp"
#include "oracles.hpp"

using namespace gslab;

TEST_CASE("limit of beta over alpha against the closed form") {
  CHECK(limit_constant(5, 2.0) == doctest::Approx(oracle::beta_alpha_limit(5, 2.0)).epsilon(1e-8));
  // for d=5, p=2 the oracle reduces to 315 pi / 16
  CHECK(limit_constant(5, 2.0) == doctest::Approx(315.0 * M_PI / 16.0).epsilon(1e-8));
  CHECK(limit_constant(6, 1.5) == doctest::Approx(oracle::beta_alpha_limit(6, 1.5)).epsilon(1e-8));

  CHECK_THROWS_AS(limit_constant(4, 2.0), DivergentNormError);
  CHECK_THROWS_AS(limit_constant(5, 7.0 / 3.0), InvalidParameterError);  // pole
}

TEST_CASE("omega sweep trends") {
  const auto rows = sweep(5, 2.0, {10.0, 100.0, 1000.0});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    CHECK(r.exp_tail_ok);
    CHECK(std::isfinite(r.l2_dist));
  }
  CHECK(rows[1].alpha < rows[0].alpha);
  CHECK(rows[2].alpha < rows[1].alpha);
  CHECK(rows[1].beta < rows[0].beta);
  CHECK(rows[2].beta < rows[1].beta);
  CHECK(rows[1].h1dot_dist < rows[0].h1dot_dist);
  CHECK(rows[2].h1dot_dist < rows[1].h1dot_dist);
  CHECK(rows[2].l2_dist < rows[1].l2_dist);

  // β/α climbs toward its limit from below
  const double limit = limit_constant(5, 2.0);
  CHECK(rows[0].beta_over_alpha < rows[1].beta_over_alpha);
  CHECK(rows[1].beta_over_alpha < rows[2].beta_over_alpha);
  CHECK(rows[2].beta_over_alpha < limit);
  CHECK(rows[2].beta_over_alpha > 0.5 * limit);

  // decay_sup stays bounded: last row within twice the median
  std::vector<double> sups;
  for (const auto& r : rows) sups.push_back(r.decay_sup);
  std::vector<double> sorted = sups;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sups.back() <= 2.0 * sorted[sorted.size() / 2]);

  CHECK_THROWS_AS(sweep(5, 2.0, {10.0, 5.0}), InvalidParameterError);
}

TEST_CASE("sweep marks the divergent comparison column below d=5") {
  const auto rows = sweep(4, 2.0, {10.0});
  REQUIRE(rows.size() == 1);
  CHECK(std::isnan(rows[0].l2_dist));
  CHECK(!rows[0].error.empty());
  CHECK(std::isfinite(rows[0].h1dot_dist));
}

TEST_CASE("ground-state bounds across frequencies") {
  const double grad_w = std::sqrt(oracle::bubble_grad_sq(5));
  std::vector<double> mass_bound, pointwise;
  for (double om : {1.0, 10.0, 100.0}) {
    const ProblemParams prm(5, 2.0, om);
    const ShootingResult sol = shoot(prm);
    CHECK(std::sqrt(sol.report.grad_sq) <= grad_w + 1e-3);
    mass_bound.push_back(std::sqrt(sol.report.mass * om));
    double sup = 0.0;
    for (int i = 0; i < sol.profile.size(); ++i)
      sup = std::max(sup, std::pow(om, 0.25) *
                              std::pow(sol.profile.grid.nodes(i), 2.0) *
                              sol.profile.values(i));
    pointwise.push_back(sup);
  }
  // |Φ|_2 sqrt(ω) and ω^{1/4} r^{(d-1)/2} Φ bounded by one constant each
  for (auto& v : {mass_bound, pointwise}) {
    std::vector<double> s = v;
    std::sort(s.begin(), s.end());
    CHECK(v.back() <= 2.0 * s[s.size() / 2]);
  }
}

TEST_CASE("exponential tail bound on the rescaled state") {
  const ProblemParams prm(5, 2.0, 1000.0);
  const RescaledState st = rescale(shoot(prm), prm);
  const DecayCheck chk = exp_decay_check(st);
  CHECK(chk.ok);
  CHECK(chk.c0 > 0.0);
  CHECK(chk.nodes_checked > 0);

  // α = 0 limit: the far-field region is empty
  RescaledState wstate;
  wstate.params = prm;
  wstate.alpha = 0.0;
  wstate.beta = 0.0;
  wstate.m_omega = 1.0;
  wstate.profile = make_talenti_profile(5);
  const DecayCheck vac = exp_decay_check(wstate);
  CHECK(vac.ok);
  CHECK(vac.nodes_checked == 0);
}

TEST_CASE("decay margins do not deteriorate along the sweep") {
  std::vector<double> margins;
  for (double om : {10.0, 100.0, 1000.0}) {
    const ProblemParams prm(5, 2.0, om);
    margins.push_back(exp_decay_check(rescale(shoot(prm), prm)).c0);
  }
  std::vector<double> s = margins;
  std::sort(s.begin(), s.end());
  CHECK(margins.back() <= 2.0 * s[s.size() / 2]);
}

TEST_CASE("cutoff bubble energy expansion") {
  const auto rep = bubble_expansion(5, 2.0, 1.0, {1e-1, 1e-2, 1e-3, 1e-4});
  CHECK(rep.fit_ok);
  CHECK(rep.sigma_pow == doctest::Approx(oracle::bubble_grad_sq(5)).epsilon(1e-8));
  CHECK(rep.grad_rate == doctest::Approx(1.5).epsilon(0.10));
  CHECK(rep.crit_rate == doctest::Approx(2.5).epsilon(0.10));
  CHECK(rep.lp1_rate == doctest::Approx(0.25).epsilon(0.10));
  // strict mountain-pass bound at the smallest epsilon
  CHECK(rep.m_upper.back() < rep.sigma_pow / 5.0);

  CHECK_THROWS_AS(bubble_expansion(5, 2.0, 1.0, {0.1, 0.01}), InvalidParameterError);
  CHECK_THROWS_AS(bubble_expansion(5, 2.0, 1.0, {0.1, 0.2, 0.5, 1.5}), InvalidParameterError);
}

TEST_CASE("four-dimensional log-corrected mountain-pass expansion") {
  const auto rep = bubble_expansion(4, 2.0, 1.0, {1e-1, 1e-2, 1e-3, 1e-4});
  CHECK(rep.y_log_coeff > 0.0);
  CHECK(rep.y_log_quality < 0.5);
}
