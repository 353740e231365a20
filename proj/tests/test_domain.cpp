#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/functionals.hpp"
#include "gslab/grid.hpp"
#include "gslab/params.hpp"
#include "gslab/talenti.hpp"
#include "oracles.hpp"

using namespace gslab;

TEST_CASE("problem params invariants") {
  CHECK_NOTHROW(ProblemParams(5, 2.0, 1.0));
  CHECK_THROWS_AS(ProblemParams(2, 2.0, 1.0), InvalidDimensionError);
  CHECK_THROWS_AS(ProblemParams(5, 1.0, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(ProblemParams(5, 7.0 / 3.0, 1.0), InvalidParameterError);  // critical power
  CHECK_THROWS_AS(ProblemParams(5, 2.0, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(ProblemParams(5, 2.0, -3.0), InvalidParameterError);

  const ProblemParams prm(5, 2.0, 4.0);
  CHECK(prm.q_crit() == doctest::Approx(7.0 / 3.0));
  CHECK(prm.two_star() == doctest::Approx(10.0 / 3.0));
  CHECK(prm.gamma() == doctest::Approx(1.0));

  // valid params but outside the existence hypothesis for d = 3
  const ProblemParams low(3, 2.0, 1.0);
  CHECK_FALSE(low.ground_state_regime());
  CHECK(ProblemParams(3, 4.0, 1.0).ground_state_regime());
}

TEST_CASE("radial grid weights reproduce shell volumes") {
  for (int d : {3, 5, 7}) {
    const RadialGrid g = make_geometric_grid(d, 1e-4, 50.0, auto_node_count(1e-4, 50.0));
    CHECK(g.weights.minCoeff() > 0.0);
    const double vol = g.weights.sum();
    CHECK(std::abs(vol - g.shell_volume()) <= 1e-10 * g.shell_volume());
  }
  CHECK_THROWS_AS(make_geometric_grid(5, 0.0, 1.0, 10), InvalidParameterError);
  Eigen::ArrayXd bad(4);
  bad << 0.1, 0.2, 0.3, 0.4;  // odd interval count
  CHECK_THROWS_AS(make_grid_from_nodes(5, bad), InvalidParameterError);
}

TEST_CASE("talenti closed form") {
  CHECK(talenti(5, 0.0) == doctest::Approx(1.0));
  CHECK(talenti(5, std::sqrt(15.0)) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(talenti(5, 1.0) == doctest::Approx(std::pow(16.0 / 15.0, -1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(talenti(2, 1.0), InvalidDimensionError);
  double prev = 2.0;
  for (double r = 0.0; r < 30.0; r += 0.25) {
    const double w = talenti(5, r);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("talenti solves the critical equation pointwise") {
  for (int d : {3, 4, 5, 6, 7}) {
    const RadialProfile w = make_talenti_profile(d);
    const double qc = double(d + 2) / (d - 2);
    double worst = 0.0;
    for (int i = 0; i < w.size(); ++i) {
      const double r = w.grid.nodes(i);
      const double resid = -talenti_second_deriv(d, r) - (d - 1) / r * talenti_deriv(d, r) -
                           std::pow(talenti(d, r), qc);
      worst = std::max(worst, std::abs(resid));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("scaling generator") {
  CHECK(lambda_talenti(5, 0.0) == doctest::Approx(1.5));
  // exactly one sign change along the profile
  const RadialProfile lw = make_lambda_talenti_profile(5);
  int changes = 0;
  for (int i = 1; i < lw.size(); ++i)
    if ((lw.values(i) > 0) != (lw.values(i - 1) > 0)) ++changes;
  CHECK(changes == 1);
  const double root = std::sqrt(15.0);
  CHECK(std::abs(lambda_talenti(5, root)) <= 1e-14);

  // ΛW is the λ-derivative of the scaling orbit at λ = 1
  for (int d : {3, 5, 7}) {
    for (double r : {0.1, 0.7, 2.3, 9.0}) {
      const double h = 1e-5;
      auto orbit = [&](double lam) {
        return std::pow(lam, 0.5 * (d - 2)) * talenti(d, lam * r);
      };
      const double fd = (orbit(1.0 + h) - orbit(1.0 - h)) / (2.0 * h);
      CHECK(lambda_talenti(d, r) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("bubble norms match the closed-form moments") {
  for (int d : {3, 4, 5, 6, 7}) {
    const RadialProfile w = make_talenti_profile(d);
    const double ts = 2.0 * d / (d - 2);
    const double grad = grad_norm_sq(w);
    const double crit = norm_power(w, ts);
    CHECK(grad == doctest::Approx(oracle::bubble_grad_sq(d)).epsilon(1e-9));
    CHECK(crit == doctest::Approx(oracle::bubble_lq(d, ts)).epsilon(1e-9));
    CHECK(std::abs(grad - crit) <= 1e-8 * grad);
  }
  // mass of the bubble diverges up to dimension four
  CHECK_THROWS_AS(norm_power(make_talenti_profile(4), 2.0), DivergentNormError);
  CHECK(norm_power(make_talenti_profile(5), 2.0) ==
        doctest::Approx(oracle::bubble_lq(5, 2.0)).epsilon(1e-9));
}

TEST_CASE("functional identities are algebraic recombinations") {
  const ProblemParams prm(5, 2.0, 1.7);
  RadialProfile u = scale_profile(make_talenti_profile(5), 0.8);
  const FunctionalReport rep = functionals(u, prm);
  const double ts = prm.two_star();
  const double scale = rep.grad_sq + rep.mass + rep.lp1 + rep.l2s;

  CHECK(std::abs((rep.action - rep.pohozaev) - rep.grad_sq / prm.d) <= 1e-12 * scale);
  const double rhs24 = prm.omega / prm.d * rep.mass -
                       (ts - (prm.p + 1.0)) / (ts * (prm.p + 1.0)) * rep.lp1;
  CHECK(std::abs((rep.pohozaev - rep.nehari / ts) - rhs24) <= 1e-12 * scale);
  const double rhs25 = 0.5 * (prm.p - 1.0) / (prm.p + 1.0) * prm.omega * rep.mass -
                       (ts - (prm.p + 1.0)) / (ts * (prm.p + 1.0)) * (rep.grad_sq - rep.l2s);
  CHECK(std::abs((rep.pohozaev - rep.nehari / (prm.p + 1.0)) - rhs25) <= 1e-12 * scale);
  CHECK(std::abs(rep.i_func - (rep.action - rep.nehari / (prm.p + 1.0))) <= 1e-12 * scale);
  CHECK(rep.i_func >= 0.0);
}

TEST_CASE("functionals of the zero profile vanish") {
  const ProblemParams prm(5, 2.0, 1.0);
  RadialProfile z;
  z.grid = make_geometric_grid(5, 1e-3, 10.0, 100);
  z.values = Eigen::ArrayXd::Zero(z.grid.size());
  z.derivs = Eigen::ArrayXd::Zero(z.grid.size());
  const FunctionalReport rep = functionals(z, prm);
  CHECK(rep.action == 0.0);
  CHECK(rep.nehari == 0.0);
  CHECK(rep.pohozaev == 0.0);
  CHECK(rep.grad_sq == 0.0);
  CHECK(rep.mass == 0.0);
}

TEST_CASE("nehari scaling on the truncated bubble") {
  const ProblemParams prm(5, 2.0, 1.0);
  const RadialProfile u = truncate_profile(make_talenti_profile(5), 20.0);
  const double lam = nehari_scale(u, prm);
  CHECK(lam > 0.0);

  auto nehari_at = [&](double c) { return functionals(scale_profile(u, c), prm).nehari; };
  const double scale = functional_scale(functionals(scale_profile(u, lam), prm), prm);
  CHECK(std::abs(nehari_at(lam)) <= 1e-9 * scale);
  CHECK(nehari_at(0.5 * lam) > 0.0);
  CHECK(nehari_at(2.0 * lam) < 0.0);

  // homogeneity: scaling the input rescales the root
  CHECK(nehari_scale(scale_profile(u, 2.0), prm) == doctest::Approx(0.5 * lam).epsilon(1e-12));

  RadialProfile z = u;
  z.values.setZero();
  z.derivs.setZero();
  z.has_core = false;
  z.has_tail = false;
  CHECK_THROWS_AS(nehari_scale(z, prm), InvalidParameterError);
}

TEST_CASE("pairing identity of the scaling generator") {
  // coefficient vanishes at q = 2*-1
  const IdentityPair at_crit = scaling_identity_check(5, 7.0 / 3.0);
  const double scale = oracle::bubble_lq(5, 7.0 / 3.0 + 1.0);
  CHECK(std::abs(at_crit.lhs) <= 1e-6 * scale);
  CHECK(at_crit.rhs == 0.0);

  const IdentityPair q2 = scaling_identity_check(5, 2.0);
  CHECK(q2.lhs / q2.rhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(q2.rhs == doctest::Approx(oracle::bubble_pairing(5, 2.0)).epsilon(1e-8));

  // d = 6, q = 1: coefficient is exactly one, so the pairing is -|W|_2^2
  const IdentityPair q1 = scaling_identity_check(6, 1.0);
  CHECK(q1.rhs == doctest::Approx(-oracle::bubble_lq(6, 2.0)).epsilon(1e-8));
  CHECK(q1.lhs / q1.rhs == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(scaling_identity_check(3, 1.0), DivergentNormError);
  CHECK_THROWS_AS(scaling_identity_check(5, 3.0), OutOfRangeError);
}
