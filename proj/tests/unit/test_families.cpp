#include "helpers.hpp"
#include "qdiscord/families.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/solver.hpp"

#include <doctest.h>

using namespace qdiscord;
using namespace testing;

TEST_SUITE("extremal-families") {

TEST_CASE("alpha states") {
  const FamilyPoint zero = alpha_state(0.0);
  Matrix4c expected = Matrix4c::Zero();
  expected.diagonal() << 0.0, 0.5, 0.5, 0.0;
  CHECK((zero.state.matrix() - expected).norm() < 1e-15);
  CHECK(*zero.analytic_discord == 0.0);

  const FamilyPoint third = alpha_state(1.0 / 3.0);
  CHECK(*third.analytic_discord == doctest::Approx(1.0 / 3.0));
  CHECK(third.analytic_dg_normalized == doctest::Approx(1.0 / 9.0));
  CHECK(hierarchy_check(*third.analytic_discord, third.analytic_dg_normalized).margin == doctest::Approx(0.0));

  CHECK_THROWS_AS(alpha_state(0.34), FamilyError);
  CHECK_THROWS_AS(alpha_state(-0.01), FamilyError);
}

TEST_CASE("alpha grid: solver and closed forms") {
  for (int i = 0; i < 100; ++i) {
    const double a = (1.0 / 3.0) * i / 99.0;
    const FamilyPoint fp = alpha_state(a);
    CAPTURE(a);
    CHECK(std::abs(quantum_discord(fp.state).discord - a) <= 1e-6);
    CHECK(std::abs(geometric_discord(fp.state).dg_normalized - a * a) <= 1e-10);
  }
}

TEST_CASE("pure family") {
  const FamilyPoint p0 = pure_state(0.0);
  CHECK(*p0.analytic_discord == 0.0);
  CHECK(p0.analytic_dg_normalized == 0.0);
  const FamilyPoint half = pure_state(0.5);
  CHECK(*half.analytic_discord == doctest::Approx(1.0));
  CHECK(half.analytic_dg_normalized == doctest::Approx(1.0));
  const FamilyPoint p3 = pure_state(0.3);
  CHECK(*p3.analytic_discord == doctest::Approx(0.8813).epsilon(1e-4));
  CHECK(p3.analytic_dg_normalized == doctest::Approx(0.84));
  CHECK(std::abs(quantum_discord(p3.state).discord - *p3.analytic_discord) <= 1e-6);
  CHECK(std::abs(geometric_discord(p3.state).dg_normalized - 0.84) <= 1e-10);
  CHECK_THROWS_AS(pure_state(1.5), FamilyError);
}

TEST_CASE("branch (iii): relation root, closed-form discord and 2 D_G = g") {
  for (int i = 1; i <= 50; ++i) {
    const double g = i / 51.0;
    CAPTURE(g);
    const FamilyPoint fp = branch3_state(g);
    const auto [lo, hi] = branch3_bracket(g);
    CHECK(fp.solved >= lo);
    CHECK(fp.solved <= hi);
    CHECK(std::abs(quantum_discord(fp.state).discord - *fp.analytic_discord) <= 1e-6);
    CHECK(std::abs(geometric_discord(fp.state).dg_normalized - g) <= 1e-8);
  }
}

TEST_CASE("branch (iii) g = 0.5 and 0.49 against the solver") {
  for (double g : {0.5, 0.49}) {
    const FamilyPoint fp = branch3_state(g);
    CHECK(std::abs(quantum_discord(fp.state).discord - *fp.analytic_discord) <= 1e-6);
  }
}

TEST_CASE("branch (iii) root maximises the closed-form discord at fixed g") {
  // Independent check of the relation: along the one-parameter slice of
  // states with 2 D_G = g, the family member has the largest discord.
  for (double g : {0.2, 0.5, 0.8}) {
    CAPTURE(g);
    const auto [lo, hi] = branch3_bracket(g);
    auto d_at = [g](double c) { return branch3_discord((1.0 - 2.0 * c + 2.0 * c * c - g) / (2.0 * c), c); };
    double a = lo + 1e-9, b = hi - 1e-9;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
      const double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
      if (d_at(x1) > d_at(x2))
        b = x2;
      else
        a = x1;
    }
    CHECK(branch3_state(g).solved == doctest::Approx(0.5 * (a + b)).epsilon(1e-6));
  }
}

TEST_CASE("branch (iii) endpoints") {
  const FamilyPoint one = branch3_state(1.0);
  CHECK(*one.analytic_discord == 1.0);
  CHECK((one.state.matrix() - bell_state().matrix()).norm() < 1e-12);
  // Shared endpoint with the pure family at p = 1/2.
  const FamilyPoint half = pure_state(0.5);
  CHECK(std::abs(*one.analytic_discord - *half.analytic_discord) <= 1e-4);
  CHECK(std::abs(one.analytic_dg_normalized - half.analytic_dg_normalized) <= 1e-4);

  const FamilyPoint zero = branch3_state(0.0);
  CHECK(*zero.analytic_discord == 0.0);
  CHECK(std::abs(quantum_discord(zero.state).discord) <= 1e-9);
  CHECK_THROWS_AS(branch3_state(1.1), FamilyError);
}

TEST_CASE("branch (ii) as printed: no root is surfaced, not guessed") {
  // At a = 1/3 the bracket collapses to r = 0, an exact root of the relation.
  const FamilyPoint start = branch2_state(1.0 / 3.0);
  CHECK(start.solved == 0.0);
  CHECK(start.analytic_dg_normalized == doctest::Approx(1.0 / 9.0));
  for (double a : {0.34, 0.35, 5.0 / 14.0}) {
    CAPTURE(a);
    try {
      branch2_state(a);
      FAIL("expected NoRoot");
    } catch (const FamilyError& e) {
      CHECK(e.kind() == FamilyErrorKind::NoRoot);
    }
  }
  CHECK_THROWS_AS(branch2_state(0.3), FamilyError);
}

TEST_CASE("bracketed_root") {
  auto f = [](double x) { return x * x - 2.0; };
  CHECK(*bracketed_root(f, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_FALSE(bracketed_root(f, 2.0, 3.0).has_value());
  // Endpoint zero only counts without an interior sign change.
  auto g = [](double x) { return x * (x - 0.5); };
  CHECK(*bracketed_root(g, 0.0, 0.4) == 0.0);
  CHECK(*bracketed_root(g, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hierarchy_check") {
  HierarchyCheck h = hierarchy_check(0.0, 0.0);
  CHECK(h.holds);
  CHECK(h.margin == 0.0);
  h = hierarchy_check(0.2, 0.04);
  CHECK(h.holds);
  CHECK(std::abs(h.margin) < 1e-15);
  h = hierarchy_check(0.9, 0.5);
  CHECK_FALSE(h.holds);
  CHECK(h.margin == doctest::Approx(-0.31));
}

TEST_CASE("lower boundary envelope") {
  const LowerBoundary lb(400);
  CHECK(*lb.at(0.0) == doctest::Approx(0.0));
  CHECK(*lb.at(0.2) == doctest::Approx(0.04).epsilon(1e-3));
  CHECK(*lb.at(1.0) == doctest::Approx(1.0));
  CHECK_FALSE(lb.at(1.5).has_value());
  // The envelope never exceeds the hierarchy bound curve D^2 from below.
  for (int i = 0; i <= 100; ++i) {
    const double d = i / 100.0;
    CHECK(*lb.at(d) >= d * d - 1e-3);
  }
}

}
