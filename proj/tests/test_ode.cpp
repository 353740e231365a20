#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/ode.hpp"
#include "gslab/talenti.hpp"
#include "oracles.hpp"

using namespace gslab;

TEST_CASE("pure critical flow reproduces the bubble") {
  ProblemParams prm;  // fields set directly: the ω = 0 limit is not a valid frequency
  prm.d = 5;
  prm.p = 2.0;
  prm.omega = 0.0;
  OdeOptions opts;
  opts.subcritical_term = false;
  opts.horizon = 12.0;
  opts.record = true;
  opts.hmax_rel = 5e-3;
  auto [traj, cls] = integrate_shot(prm, 1.0, opts);
  CHECK(cls.outcome == ShotOutcome::inconclusive);  // algebraic decay, no event
  double worst = 0.0;
  for (double r = 0.05; r <= 10.0; r += 0.05)
    worst = std::max(worst, std::abs(traj.eval(r).first - talenti(5, r)));
  CHECK(worst <= 1e-6);
}

TEST_CASE("shooting locates the ground state for d=5, p=2, omega=1") {
  const ProblemParams prm(5, 2.0, 1.0);
  const ShootingResult sol = shoot(prm);

  CHECK(sol.m_low < sol.m_star);
  CHECK(sol.m_star < sol.m_high);
  CHECK((sol.m_high - sol.m_low) / sol.m_star <= 1.1e-12);
  CHECK(sol.profile.positive_decreasing());
  CHECK(sol.ode_residual <= 1e-6);

  const double scale = functional_scale(sol.report, prm);
  CHECK(std::abs(sol.report.nehari) <= 1e-6 * scale);
  CHECK(std::abs(sol.report.pohozaev) <= 1e-6 * scale);
  CHECK(std::abs(sol.report.action - sol.report.grad_sq / prm.d) <= 1e-6 * scale);

  // gradient bound against the bubble
  CHECK(std::sqrt(sol.report.grad_sq) <= std::sqrt(oracle::bubble_grad_sq(5)) + 1e-3);

  // flow energy is non-increasing along the profile
  double prev = flow_energy(prm, sol.profile.values(0), sol.profile.derivs(0));
  for (int i = 1; i < sol.profile.size(); ++i) {
    const double h = flow_energy(prm, sol.profile.values(i), sol.profile.derivs(i));
    CHECK(h <= prev + 1e-8 * std::max(1.0, std::abs(prev)));
    prev = h;
  }

  // bracket classes straddle the located height
  CHECK(integrate_shot(prm, 0.5 * sol.m_star).second.outcome == ShotOutcome::undershoot);
  CHECK(integrate_shot(prm, 2.0 * sol.m_star).second.outcome == ShotOutcome::crossing);
}

TEST_CASE("bisection height is stable under tolerance refinement") {
  const ProblemParams prm(5, 2.0, 1.0);
  ShootOptions a, b;
  a.bisect_tol = 1e-10;
  b.bisect_tol = 5e-11;
  const double m1 = shoot(prm, a).m_star;
  const double m2 = shoot(prm, b).m_star;
  CHECK(std::abs(m1 - m2) <= 10.0 * a.bisect_tol * m1);
}

TEST_CASE("existence hypothesis is enforced") {
  CHECK_THROWS_AS(shoot(ProblemParams(3, 2.0, 1.0)), InvalidParameterError);
  CHECK_NOTHROW(ProblemParams(3, 2.0, 1.0));  // params alone remain legal (census use)
}

TEST_CASE("census finds exactly one transition at moderate frequency") {
  const ProblemParams prm(5, 2.0, 10.0);
  const CensusResult census = ground_state_census(prm, 1.0, 1e5, 120);
  CHECK(census.transitions == 1);
  CHECK(census.inconclusive == 0);
  REQUIRE(census.candidates.size() == 1);
  const ShootingResult sol = shoot(prm);
  CHECK(census.candidates[0] == doctest::Approx(sol.m_star).epsilon(1e-4));
  CHECK_THROWS_AS(ground_state_census(prm, 1.0, 1e5, 50), InvalidParameterError);
}
