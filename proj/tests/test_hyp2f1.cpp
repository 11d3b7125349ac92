#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypconv/error.hpp"
#include "hypconv/hyp2f1.hpp"
#include "properties.hpp"

using namespace hypconv;

namespace {

const double kLn2 = std::log(2.0);

bool close(cplx x, cplx ref, double rel) { return std::abs(x - ref) <= rel * std::abs(ref); }

// Reference values computed with mpmath at 30 digits.
struct Reference {
  double a, b, c;
  cplx z, F, dF;
};

const Reference kReferences[] = {
    {0.5, 0.5, 1.5, {0.3, 0}, {1.058272536745462, 0}, {0.2282601209815528, 0}},
    {1, 1, 2, {0.5, 0}, {1.3862943611198906, 0}, {1.2274112777602189, 0}},
    {1, 1, 2, {-1, 0}, {0.6931471805599453, 0}, {0.19314718055994531, 0}},
    {1.5, 0.25, 3.1, {0.7, 0.6}, {1.0670348072666098, 0.1220708261944937}, {0.12900783897918758, 0.12503974531480355}},
    {0.3, 0.7, 1.0, {0.999, 0}, {2.6981440420562968, 0}, {257.1546139557928, 0}},
    {-0.4, 1.3, 2.2, {-0.9, 0.3}, {1.1840882565207038, -0.052832738863120225}, {-0.17518876792400168, -0.013118051614326035}},
    {2, 3, 7, {0, 0.95}, {0.6108550628023419, 0.5428306317827686}, {0.18827029508035845, 0.5528184874309019}},
    {0.75, 1.5, 2, {0.99999, 0}, {56.31741732904788, 0}, {1484165.3677837404, 0}},
    {1, 1, 3, {-0.999999, 0}, {0.7725888811229098, 0}, {0.15888317371460522, 0}},
    {0.5, 0.5, 1, {0.9999, 0.001}, {3.079943387872238, 0.46767527226825745}, {30.984428993992076, 315.0418341557334}},
    {-2, 1, 1, {0.6, 0}, {0.16000000000000003, 0}, {-0.8, 0}},
    {2.5, 1.5, 1.2, {-0.8, 0}, {0.1409578891667417, 0}, {0.2861728650892483, 0}},
    {1, 2, 3, {0.999999999, 0}, {39.44653181134975, 0}, {1999999979.6708007, 0}},
    {0.37, 0.81, 1.6, {0.9999999, 0}, {1.759726951293662, 0}, {5687.695303262869, 0}},
};

}  // namespace

TEST_CASE("series examples") {
  CHECK(series_eval({0.3, -1.7, 2.2}, 0.0).value == cplx(1.0));
  CHECK(close(series_eval({1, 1, 2}, 0.5).value, 2.0 * kLn2, 1e-14));
  const EvalResult poly = series_eval({-2, 1, 1}, 0.3);
  CHECK(poly.method == EvalMethod::Polynomial);
  CHECK(close(poly.value, 0.49, 1e-15));
  CHECK(series_eval({1, 1, 2}, 0.5, 1e-12).error_bound <= 1e-12 * 2.0 * kLn2);
}

TEST_CASE("series errors") {
  CHECK_THROWS_AS(series_eval({1, 1, 2}, 1.0), Error);
  try {
    series_eval({1, 1, 2}, cplx(0.0, 1.0));
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
  try {
    series_eval({1, 1, -2}, 0.5);
    FAIL("expected CPole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CPole);
  }
}

TEST_CASE("admissibility flags") {
  const Admissibility bad = check_admissibility({0.5, 0.5, -3});
  CHECK(bad.c_pole);
  CHECK_FALSE(bad.usable());
  CHECK(bad.raised() == std::vector<std::string>{"c_pole"});
  const Admissibility poly = check_admissibility({-2, 0.5, 1.5});
  CHECK(poly.usable());
  CHECK(poly.a_nonpositive_int);
  CHECK_FALSE(poly.generic());
  CHECK(check_admissibility({1, 4, 2}).c_minus_b_negative_int);
  CHECK_FALSE(check_admissibility({NAN, 1, 2}).usable());
}

TEST_CASE("eval_auto closed-form identities") {
  // z F(1,1;3;z) = 2 + 2 ((1-z)/z) log(1-z)
  const double z = 0.99;
  const double f113 = (2.0 + 2.0 * ((1.0 - z) / z) * std::log(1.0 - z)) / z;
  CHECK(close(eval_auto({1, 1, 3}, z).value, f113, 1e-13));
  // z F(1,3/2;3;z) = 4z / (1 + sqrt(1-z))^2
  const double f = 4.0 / std::pow(1.0 + std::sqrt(0.1), 2);
  CHECK(close(eval_auto({1, 1.5, 3}, 0.9).value, f, 1e-13));
  CHECK(eval_auto({0.7, 0.2, 1.9}, 0.0).value == cplx(1.0));
  // Close to z = 1 with w passed exactly: F(1,1;2;z) = -log(w)/z
  const DiskPoint pt = DiskPoint::on_circle(1e-12, 0.0);
  CHECK(close(eval_auto({1, 1, 2}, pt).value, -std::log(1e-12) / (1.0 - 1e-12), 1e-12));
}

TEST_CASE("eval_auto against reference values") {
  for (const Reference& r : kReferences) {
    CAPTURE(r.a);
    CAPTURE(r.b);
    CAPTURE(r.c);
    CAPTURE(r.z);
    const Params p{r.a, r.b, r.c};
    CHECK(close(eval_auto(p, r.z).value, r.F, 1e-10));
    CHECK(close(derivative_2f1(p, r.z), r.dF, 1e-9));
    const ValueAndDerivative vd = eval_with_derivative(p, DiskPoint::at(r.z));
    CHECK(close(vd.value, r.F, 1e-10));
    CHECK(close(vd.derivative, r.dF, 1e-9));
  }
}

TEST_CASE("routes") {
  CHECK(eval_auto({0.5, 0.5, 1.5}, 0.3).method == EvalMethod::Series);
  CHECK(eval_auto({0.3, 0.4, 1.2}, DiskPoint::on_circle(1e-3, 0.1)).method == EvalMethod::ConnectionFormula);
  CHECK(eval_auto({0.5, 0.5, 1.0}, DiskPoint::on_circle(1e-3, 0.1)).method == EvalMethod::BalancedLog);
  const EvalResult integer_gap = eval_auto({1, 1, 3}, DiskPoint::on_circle(1e-3, 0.1));
  CHECK(integer_gap.method == EvalMethod::OdeContinuation);
  CHECK(integer_gap.connection_unavailable);
  CHECK(eval_auto({-3, 1, 1}, 0.99).method == EvalMethod::Polynomial);
  CHECK_THROWS_AS(eval_auto({1, 1, 2}, 1.0), Error);
  CHECK_THROWS_AS(eval_auto({1, 1, 2}, 1.5), Error);
}

TEST_CASE("connection formula") {
  const DiskPoint pt = DiskPoint::at(cplx(0.6, 0.2));
  const Params p{0.3, 0.4, 1.2};
  CHECK(close(connection_eval(p, pt).value, series_eval(p, pt.z).value, 1e-12));
  try {
    connection_eval({1, 1, 3}, pt);
    FAIL("expected CaseNotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CaseNotApplicable);
  }
}

TEST_CASE("contiguous triple examples") {
  const ContiguousTriple t0 = contiguous_triple({0.4, 1.3, 2.5}, 0.0);
  CHECK(t0.F.value == cplx(1.0));
  CHECK(t0.G.value == cplx(1.0));
  CHECK(t0.H.value == cplx(1.0));

  const ContiguousTriple t = contiguous_triple({0, 1, 2}, 0.5);
  CHECK(t.F.value == cplx(1.0));
  CHECK(close(t.G.value, 2.0 * kLn2, 1e-14));
  // F(1,2;3;z) = 2 (-log(1-z) - z) / z^2
  CHECK(close(t.H.value, 2.0 * (kLn2 - 0.5) / 0.25, 1e-14));

  const ContiguousTriple u = contiguous_triple({1, 1, 2}, -1.0);
  CHECK(close(u.F.value, kLn2, 1e-13));
  CHECK(close(u.G.value, 0.5, 1e-13));
  CHECK(close(u.H.value, 2.0 * (kLn2 - 0.5), 1e-12));
  CHECK(u.residual({1, 1, 2}, -1.0) < 1e-14);
}

TEST_CASE("derivative examples") {
  CHECK(close(derivative_2f1({0.4, 1.3, 2.5}, 0.0), 0.4 * 1.3 / 2.5, 1e-15));
  CHECK(close(derivative_2f1({1, 1, 2}, 0.5), 4.0 - 4.0 * kLn2, 1e-14));
  CHECK(close(derivative_2f1({-2, 1, 1}, 0.3), -1.4, 1e-14));
}

TEST_CASE("value at one") {
  CHECK(std::abs(value_at_one({0.5, 0.5, 2}) - 4.0 / std::numbers::pi) < 1e-13);
  CHECK(value_at_one({0, 3.7, 5}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(value_at_one({1, 1, 3}) - 2.0) < 1e-13);
  // approached from inside
  CHECK(std::abs(eval_auto({1, 1, 3}, DiskPoint::on_circle(1e-10, 0.0)).value.real() - 2.0) < 1e-8);
  for (Params p : {Params{1, 1, 2}, Params{1, 1.5, 2}}) {
    try {
      value_at_one(p);
      FAIL("expected NotConvergentAtOne");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotConvergentAtOne);
    }
  }
}

TEST_CASE("ramanujan R") {
  CHECK(std::abs(ramanujan_R(1, 1)) < 1e-15);
  CHECK(std::abs(ramanujan_R(0.5, 0.5) - 4.0 * kLn2) < 1e-13);
  CHECK(std::abs(ramanujan_R(1, 2) + 1.0) < 1e-14);
  CHECK_THROWS_AS(ramanujan_R(-1, 2), PoleError);
}

TEST_CASE("ratio asymptotic cases") {
  const AsymptoticExpansion below = ratio_asymptotic({0.5, 0.5, 1.5});
  CHECK(below.kind == AsymptoticCase::Below);
  CHECK(below.alpha == 0.5);
  CHECK(below.epsilon == 1.0);
  CHECK(std::abs(below.A - 2.0 / std::numbers::pi) < 1e-14);

  const AsymptoticExpansion balanced = ratio_asymptotic({1, 1, 2});
  CHECK(balanced.kind == AsymptoticCase::Balanced);
  const DiskPoint pt = DiskPoint::on_circle(1e-3, 0.0);
  CHECK(close(balanced.leading(pt), 1.0 / (-1e-3 * std::log(1e-3)), 1e-12));

  const AsymptoticExpansion above = ratio_asymptotic({1, 1.5, 2});
  CHECK(above.kind == AsymptoticCase::Above);
  CHECK(close(above.leading(pt), 0.5 / 1e-3, 1e-12));
  CHECK_FALSE(above.describe().empty());

  try {
    ratio_asymptotic({0.5, 0.5, 2.5});
    FAIL("expected CaseNotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CaseNotApplicable);
  }
  try {
    ratio_asymptotic({0.5, 3.5, 2.5});
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("below: remainder stays within its order") {
  for (Params p : {Params{0.5, 0.5, 1.5}, Params{0.3, 0.4, 1.2}, Params{1.2, 0.5, 2.0}, Params{0.25, 0.25, 0.6}}) {
    CAPTURE(p.c);
    const AsymptoticExpansion e = ratio_asymptotic(p);
    double lo = INFINITY, hi = 0.0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const ContiguousTriple t = contiguous_triple(p, DiskPoint::on_circle(gap, 0.0));
      const double ratio = (t.G.value / t.F.value).real();
      const double scaled = std::abs(ratio - e.A * std::pow(gap, e.alpha - 1.0)) * std::pow(gap, 1.0 - e.epsilon);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
    CHECK(hi < 1.0);
    CHECK(hi < 3.0 * lo);
  }
}

TEST_CASE("balanced: leading term ratio tends to one") {
  for (Params p : {Params{0.5, 0.5, 1.0}, Params{0.3, 0.7, 1.0}, Params{2, 1.5, 3.5}}) {
    CAPTURE(p.a);
    double prev = INFINITY;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4, 1e-8}) {
      const ContiguousTriple t = contiguous_triple(p, DiskPoint::on_circle(gap, 0.0));
      const double dev = std::abs((t.G.value / t.F.value).real() * (-p.a * gap * std::log(gap)) - 1.0);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 0.2);
  }
}

TEST_CASE("power-law fit of G/F") {
  const PowerLawFit fit = fit_ratio_power_law({0.5, 0.5, 1.5}, {0.9, 0.99, 0.999, 0.9999});
  CHECK(std::abs(fit.exponent + 0.5) < 0.02);
  CHECK(std::abs(fit.A / (2.0 / std::numbers::pi) - 1.0) < 0.02);
  CHECK_THROWS_AS(fit_ratio_power_law({0.5, 0.5, 1.5}, {0.9, 0.99}), Error);
}

TEST_CASE("term cap") {
  CHECK(series_term_cap() > 0);
}

TEST_CASE("properties") {
  using namespace hypconv::testing;
  for (const PropertyReport& r : {ode_residual_property(), contiguous_property(), derivative_identity_property(),
                                  connection_property()}) {
    INFO(r.summary());
    CHECK(r.ok());
  }
}
