#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypconv/cfrac.hpp"
#include "hypconv/error.hpp"
#include "properties.hpp"
#include "reference.hpp"

using namespace hypconv;
using hypconv::testing::brute_series;

namespace {
const double kLn2 = std::log(2.0);
}  // namespace

TEST_CASE("coefficient schedule") {
  const CFCoefficients g = cf_coefficients({1, 1, 2}, 4);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.5);
  CHECK(g[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(g[3] == 0.5);
  CHECK(g[4] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK_THROWS(g[5]);

  CHECK(cf_coefficients({0, 0, 1}, 3)[1] == 0.0);

  // g(2) = (a+1)/(c+1) = 3/5 by the schedule
  const CFCoefficients h = cf_coefficients({0.5, 0.5, 1.5}, 2);
  CHECK(h[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(h[2] == doctest::Approx(0.6).epsilon(1e-15));

  try {
    cf_coefficients({0.5, 0.5, -1.0}, 4);  // c + 2k - 1 = 0 at k = 1
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("coefficients lie in [0, 1] on the box") {
  testing::Sampler s(3);
  for (int i = 0; i < 200; ++i) {
    const Params p = s.cf_box();
    const CFCoefficients g = cf_coefficients(p, 60);
    for (double x : g.g) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }
}

TEST_CASE("box membership") {
  CHECK(in_cf_box({1, 1, 2}));
  CHECK(in_cf_box({-1, 0, 0.5}));
  CHECK_FALSE(in_cf_box({-1.1, 0.5, 2}));
  CHECK(in_cf_box({0.9, 0.95, 0.97}));
  CHECK_FALSE(in_cf_box({1, 1.5, 1.2}));
  CHECK(in_cauchy_box({1, 1, 2}));
  CHECK_FALSE(in_cauchy_box({0, 1, 2}));
  CHECK_FALSE(in_cauchy_box({1.2, 1, 2}));
}

TEST_CASE("ratio examples") {
  CHECK(eval_ratio_cf({0.3, 0.7, 1.9}, 0.0) == cplx(1.0));
  CHECK(eval_ratio_cf({0, 0, 1}, cplx(0.4, 0.3)) == cplx(1.0));
  // a = 0: G/F = F(1,b;c;z)
  const cplx r = eval_ratio_cf({0, 0.8, 1.7}, 0.5);
  CHECK(std::abs(r - brute_series(1, 0.8, 1.7, 0.5)) < 1e-13 * std::abs(r));
  CHECK(std::abs(eval_ratio_cf({1, 1, 2}, -1.0) - 1.0 / (2.0 * kLn2)) < 1e-13);
}

TEST_CASE("ratio outside the box refuses") {
  try {
    eval_ratio_cf({1, 1.5, 1.2}, 0.5);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("Wall bounds") {
  const CircleBound b113 = wall_bounds_at_minus1({1, 1, 3});
  CHECK(b113.lower == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(b113.upper == doctest::Approx(5.0 / 6.0).epsilon(1e-15));

  const CircleBound b112 = wall_bounds_at_minus1({1, 1, 2});
  CHECK(b112.lower == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(b112.upper == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(b112.contains(1.0 / (2.0 * kLn2)));

  const CircleBound b0 = wall_bounds_at_minus1({0.4, 0, 1.3});
  CHECK(b0.lower == 1.0);
  CHECK(b0.upper == 1.0);
  CHECK(eval_ratio_cf({0.4, 0, 1.3}, -1.0) == cplx(1.0));

  CHECK_THROWS_AS(wall_bounds_at_minus1({1, 2, 1.5}), Error);
}

TEST_CASE("Cauchy factor examples") {
  CHECK(cauchy_factor({0.6, 0.4, 1.1}, 0.0) == cplx(1.0));
  CHECK(std::abs(cauchy_factor({1, 1, 2}, -1.0) - kLn2) < 1e-13);
  // With a = 1 the factor is F/((1-z) G) and G = 1/(1-z): it equals F.
  const cplx f = brute_series(1, 1, 2, 0.5);
  CHECK(std::abs(cauchy_factor({1, 1, 2}, 0.5) - f) < 1e-13);
  CHECK(std::abs(f - 2.0 * kLn2) < 1e-15);
  const cplx z(0.2, -0.45);
  const Params p{0.35, 0.9, 1.6};
  const cplx ratio = brute_series(p.a + 1, p.b, p.c, z) / brute_series(p.a, p.b, p.c, z);
  CHECK(std::abs(cauchy_factor(p, z) - 1.0 / ((1.0 - z) * (1.0 - p.a + p.a * ratio))) < 1e-13);
  // near z = 1 with the gap carried exactly
  const cplx near = cauchy_factor(p, DiskPoint::on_circle(1e-12, 0.0));
  CHECK(near.real() > 0.5);
  // both routes agree where they meet
  const DiskPoint edge = DiskPoint::on_circle(0.0101, 0.003);
  const cplx via_cf = 1.0 / (edge.w * (1.0 - p.a + p.a * eval_ratio_cf(p, edge.z)));
  CHECK(std::abs(cauchy_factor(p, edge) - via_cf) < 1e-12 * std::abs(via_cf));
  const cplx F = eval_auto(p, edge).value;
  const cplx G = eval_auto(Params{p.a + 1, p.b, p.c}, edge).value;
  CHECK(std::abs(via_cf - F / (edge.w * ((1.0 - p.a) * F + p.a * G))) < 1e-12 * std::abs(via_cf));
}

TEST_CASE("real on the real line") {
  testing::Sampler s(4);
  for (int i = 0; i < 200; ++i) {
    const Params p = s.cf_box();
    const double x = s.uniform(-0.999, 0.999);
    CHECK(std::abs(eval_ratio_cf(p, x).imag()) <= 1e-12);
  }
}

TEST_CASE("properties") {
  using namespace hypconv::testing;
  for (const PropertyReport& r :
       {cf_series_property(), ratio_halfplane_property(), cauchy_halfplane_property(), wall_property()}) {
    INFO(r.summary());
    CHECK(r.ok());
  }
}
