#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/functionals.hpp"
#include "gslab/ode.hpp"
#include "gslab/rescale.hpp"
#include "gslab/talenti.hpp"
#include "oracles.hpp"

using namespace gslab;

namespace {
const ProblemParams kPrm(5, 2.0, 1.0);
const ShootingResult& solution() {
  static const ShootingResult sol = shoot(kPrm);
  return sol;
}
}  // namespace

TEST_CASE("rescaled state normalization and residual") {
  const RescaledState st = rescale(solution(), kPrm);
  CHECK(st.alpha > 0.0);
  CHECK(st.beta > 0.0);
  CHECK(st.profile.core.c0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.profile.values.maxCoeff() <= 1.0 + 1e-9);
  CHECK(st.profile.values.maxCoeff() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rescaled_residual(st) <= 1e-6);

  // the center is a maximum, so ω <= M^{p-1} + M^{4/(d-2)}
  const double m = st.m_omega;
  CHECK(kPrm.omega - std::pow(m, kPrm.p - 1.0) - std::pow(m, 4.0 / (kPrm.d - 2)) <= 0.0);
}

TEST_CASE("rescaled constraint identity") {
  const RescaledState st = rescale(solution(), kPrm);
  const double ts = kPrm.two_star();
  const double mass = norm_power(st.profile, 2.0);
  const double lp1 = norm_power(st.profile, kPrm.p + 1.0);
  const double lhs = st.alpha / kPrm.d * mass;
  const double rhs = (ts - (kPrm.p + 1.0)) / (ts * (kPrm.p + 1.0)) * st.beta * lp1;
  CHECK(std::abs(lhs - rhs) <= 1e-6 * lhs);
}

TEST_CASE("kelvin transform of the bubble is the reflected bubble") {
  const RadialProfile w = make_talenti_profile(5);
  const RadialProfile kw = kelvin(w, 5);
  const double c = 15.0;  // d(d-2)
  for (int i = 0; i < kw.size(); i += 97) {
    const double rho = kw.grid.nodes(i);
    const double expected = std::pow(c, 1.5) * std::pow(1.0 + c * rho * rho, -1.5);
    CHECK(kw.values(i) == doctest::Approx(expected).epsilon(1e-12));
  }
  // |x| = 1 is the fixed sphere
  CHECK(kw.value(1.0) == doctest::Approx(talenti(5, 1.0)).epsilon(1e-10));
}

TEST_CASE("kelvin is an involution on the overlap") {
  const RescaledState st = rescale(solution(), kPrm);
  const RadialProfile k1 = kelvin(st.profile, 5);
  const RadialProfile k2 = kelvin(k1, 5);
  // image-of-image nodes coincide with the source nodes
  REQUIRE(k2.size() == st.profile.size());
  double worst = 0.0;
  for (int i = 0; i < k2.size(); ++i) {
    CHECK(k2.grid.nodes(i) == doctest::Approx(st.profile.grid.nodes(i)).epsilon(1e-13));
    worst = std::max(worst, std::abs(k2.values(i) - st.profile.values(i)) /
                                std::max(st.profile.values(i), 1e-300));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("kelvin preserves the h1dot norm") {
  const RescaledState st = rescale(solution(), kPrm);
  const double a = h1dot_norm_sq(st.profile);
  const double b = h1dot_norm_sq(kelvin(st.profile, 5));
  CHECK(std::abs(a - b) <= 1e-8 * a);

  RadialProfile trunc = truncate_profile(st.profile, 5.0);
  CHECK_THROWS_AS(kelvin(trunc, 5), IncompleteProfileError);
}

TEST_CASE("kelvin isometry of differences") {
  const RescaledState st = rescale(solution(), kPrm);
  const RadialProfile w = make_talenti_profile(5);
  const double direct = h1dot_distance(st.profile, w);
  const double mapped = h1dot_distance(kelvin(st.profile, 5), kelvin(w, 5));
  CHECK(std::abs(direct - mapped) <= 1e-6 * direct);
}

TEST_CASE("distances to the bubble") {
  const RescaledState st = rescale(solution(), kPrm);
  const auto dists = talenti_distance(st, {2.0, 3.0});
  CHECK(dists.at("h1dot") > 0.0);
  CHECK(dists.at("L2") > 0.0);
  CHECK(dists.at("L3") > 0.0);
  CHECK_THROWS_AS(talenti_distance(st, {5.0 / 3.0}), OutOfRangeError);

  // comparing the bubble against itself gives zero in every norm
  RescaledState wstate;
  wstate.params = kPrm;
  wstate.m_omega = 1.0;
  wstate.alpha = 0.0;
  wstate.beta = 0.0;
  wstate.profile = make_talenti_profile(5);
  const auto zero = talenti_distance(wstate, {2.0});
  CHECK(zero.at("h1dot") <= 1e-12);
  CHECK(zero.at("L2") <= 1e-12);
}
