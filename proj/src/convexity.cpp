#include "hypconv/convexity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "hypconv/cfrac.hpp"
#include "hypconv/error.hpp"

namespace hypconv {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 22> kRuleNames = {{
    {Rule::None, "none"},
    {Rule::ThmNec1, "Thm-nec-1"},
    {Rule::ThmNec2, "Thm-nec-2"},
    {Rule::ZeroBalancedCor, "ZeroBalanced-Cor"},
    {Rule::ThmA1Case1, "Thm-a1-case1"},
    {Rule::ThmA1Case2, "Thm-a1-case2"},
    {Rule::ThmCvxCase1, "Thm-cvx-case1"},
    {Rule::ThmCvxCase2, "Thm-cvx-case2"},
    {Rule::CorCase1Branch1, "Cor-case1-branch1"},
    {Rule::CorCase1Branch2, "Cor-case1-branch2"},
    {Rule::CorCase2, "Cor-case2"},
    {Rule::CorConvex1, "Cor-convex-1"},
    {Rule::CorConvex2a, "Cor-convex-2a"},
    {Rule::CorConvex2b, "Cor-convex-2b"},
    {Rule::S4Cor1, "S4-Cor-1"},
    {Rule::S4Cor2, "S4-Cor-2"},
    {Rule::S4Cor3, "S4-Cor-3"},
    {Rule::ThmAa, "ThmA-a"},
    {Rule::ThmAb, "ThmA-b"},
    {Rule::ThmAc, "ThmA-c"},
    {Rule::ThmAd, "ThmA-d"},
    {Rule::ThmAe, "ThmA-e"},
}};

double p_value_of(const Params& p) { return p.c - 1.0 - p.a - p.b + p.a * p.b; }

bool all_hold(const std::vector<Condition>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Condition& c) { return c.holds; });
}

Params swapped_params(const Params& p) { return {p.b, p.a, p.c}; }

RegimeMatch make_match(Rule rule, const Params& q, bool swapped, std::vector<Condition> cs) {
  RegimeMatch m;
  m.rule = rule;
  m.preconditions = std::move(cs);
  m.p_value = p_value_of(q);
  m.swapped = swapped;
  return m;
}

// Each rule evaluates its hypotheses on `q` (which may be the swapped triple)
// and, when they all hold, the kappa it asserts.
using RuleFn = RuleOutcome (*)(const Params& q, bool swapped, double tol, std::vector<std::string>& warnings);

RuleOutcome rule_nec1(const Params& q, bool swapped, double, std::vector<std::string>&) {
  const double ab = q.a * q.b;
  std::vector<Condition> cs = {
      {"a, b, c, c-a, c-b off the negative integers", check_admissibility(q).generic()},
      {"0 < ab < 1", 0.0 < ab && ab < 1.0},
      {"a + b <= c", q.a + q.b <= q.c},
      {"c < 1 + a + b - ab", q.c < 1.0 + q.a + q.b - ab},
  };
  RuleOutcome out{make_match(Rule::ThmNec1, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions)) out.kappa = OrderOfConvexity::minus_infinity();
  return out;
}

RuleOutcome rule_nec2(const Params& q, bool swapped, double, std::vector<std::string>&) {
  const double ab = q.a * q.b;
  std::vector<Condition> cs = {
      {"a, b, c, c-a, c-b off the negative integers", check_admissibility(q).generic()},
      {"ab < 0", ab < 0.0},
      {"a + b <= c", q.a + q.b <= q.c},
      {"c < 1 + a + b", q.c < 1.0 + q.a + q.b},
  };
  RuleOutcome out{make_match(Rule::ThmNec2, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions)) out.kappa = OrderOfConvexity::minus_infinity();
  return out;
}

RuleOutcome rule_a1_case1(const Params& q, bool swapped, double tol, std::vector<std::string>& warnings) {
  std::vector<Condition> cs = {
      {"a = 1", q.a == 1.0},
      {"0 < b <= c", 0.0 < q.b && q.b <= q.c},
      {"c >= 2", q.c >= 2.0},
  };
  RuleOutcome out{make_match(Rule::ThmA1Case1, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (!all_hold(out.match.preconditions)) return out;
  // F(1,b;c;-1) / F(2,b;c;-1) from the series (Pfaff-transformed at z = -1),
  // checked against the reciprocal of the continued fraction.
  const double f1 = eval_auto(Params{1.0, q.b, q.c}, cplx(-1.0)).value.real();
  const double f2 = eval_auto(Params{2.0, q.b, q.c}, cplx(-1.0)).value.real();
  const double ratio = f1 / f2;
  const double cf_ratio = 1.0 / eval_ratio_cf(Params{1.0, q.b, q.c}, cplx(-1.0)).real();
  if (std::abs(ratio - cf_ratio) > std::max(tol, 1e-10) * std::abs(ratio)) {
    std::ostringstream os;
    os.precision(17);
    os << "F(1,b;c;-1)/F(2,b;c;-1): series " << ratio << " vs continued fraction " << cf_ratio;
    warnings.push_back(os.str());
  }
  out.kappa = OrderOfConvexity::finite((4.0 - q.b - q.c) / 2.0 + (q.c - 2.0) / 2.0 * ratio);
  return out;
}

RuleOutcome rule_a1_case2(const Params& q, bool swapped, double, std::vector<std::string>&) {
  std::vector<Condition> cs = {
      {"a = 1", q.a == 1.0},
      {"0 < b <= c", 0.0 < q.b && q.b <= q.c},
      {"1 <= c < min(2, 1 + b)", 1.0 <= q.c && q.c < std::min(2.0, 1.0 + q.b)},
  };
  RuleOutcome out{make_match(Rule::ThmA1Case2, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions))
    out.kappa = OrderOfConvexity::finite((q.c - q.b) * (q.c + q.b - 3.0) / (2.0 * (1.0 + q.b - q.c)));
  return out;
}

std::vector<Condition> cvx_box(const Params& q) {
  return {
      {"0 < a < 1", 0.0 < q.a && q.a < 1.0},
      {"a <= c", q.a <= q.c},
      {"0 <= b <= c", 0.0 <= q.b && q.b <= q.c},
  };
}

double cvx_numerator_at_one(const Params& q) { return q.c - 2.0 + (1.0 - q.a) * (1.0 - q.b); }

RuleOutcome rule_cvx_case1(const Params& q, bool swapped, double, std::vector<std::string>&) {
  std::vector<Condition> cs = cvx_box(q);
  cs.push_back({"1 - b > 0", 1.0 - q.b > 0.0});
  cs.push_back({"c - 2 + (1-a)(1-b) >= 0", cvx_numerator_at_one(q) >= 0.0});
  RuleOutcome out{make_match(Rule::ThmCvxCase1, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions))
    out.kappa = OrderOfConvexity::finite((5.0 - q.c - q.a - q.b) / 2.0 + M_eval(q, cplx(-1.0)).real());
  return out;
}

RuleOutcome rule_cvx_case2(const Params& q, bool swapped, double, std::vector<std::string>& warnings) {
  std::vector<Condition> cs = cvx_box(q);
  cs.push_back({"1 - b < 0", 1.0 - q.b < 0.0});
  cs.push_back({"c - 2 + (1-a)(1-b) <= 0", cvx_numerator_at_one(q) <= 0.0});
  RuleOutcome out{make_match(Rule::ThmCvxCase2, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (!all_hold(out.match.preconditions)) return out;
  const double mobius_part = (5.0 - q.c - q.a - q.b) / 2.0;
  if (q.c < q.a + q.b) {
    out.kappa = OrderOfConvexity::finite(mobius_part + M_limit_at_1(q));
    return out;
  }
  // c >= a + b: (1-z)(1 - a + a G/F) -> 0, so M(z) -> -inf when its numerator
  // tends to p < 0, and M(z) -> 0 when p = 0.
  if (out.match.p_value < 0.0) {
    out.kappa = OrderOfConvexity::minus_infinity();
    warnings.push_back("Thm-cvx-case2 with c >= a + b: M(1) is -infinity");
  } else {
    out.kappa = OrderOfConvexity::finite(mobius_part);
  }
  return out;
}

RuleOutcome rule_cor_case2(const Params& q, bool swapped, double, std::vector<std::string>&) {
  const double ab = q.a * q.b;
  std::vector<Condition> cs = {
      {"0 < a < 1 < b <= c", 0.0 < q.a && q.a < 1.0 && 1.0 < q.b && q.b <= q.c},
      {"c < min(a + b, 1 + a + b - ab)", q.c < std::min(q.a + q.b, 1.0 + q.a + q.b - ab)},
  };
  RuleOutcome out{make_match(Rule::CorCase2, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions)) {
    const double s = q.a + q.b - q.c;
    out.kappa = OrderOfConvexity::finite(
        (q.c * q.c - q.a * q.a - q.b * q.b + 3.0 * s - 2.0) / (2.0 * s));
  }
  return out;
}

std::vector<Condition> cor_case1_box(const Params& q) {
  return {
      {"0 < a < 1", 0.0 < q.a && q.a < 1.0},
      {"a <= c", q.a <= q.c},
      {"0 < b <= min(1, c)", 0.0 < q.b && q.b <= std::min(1.0, q.c)},
  };
}

RuleOutcome rule_cor_case1_b1(const Params& q, bool swapped, double, std::vector<std::string>&) {
  const double a = q.a, b = q.b, c = q.c, ab = a * b;
  std::vector<Condition> cs = cor_case1_box(q);
  cs.push_back({"c >= 3 - a - b + ab", c >= 3.0 - a - b + ab});
  RuleOutcome out{make_match(Rule::CorCase1Branch1, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions))
    out.kappa = OrderOfConvexity::lower_bound(((4.0 - ab) * c - ab * (5.0 - a - b)) / (2.0 * (2.0 * c - ab)));
  return out;
}

RuleOutcome rule_cor_case1_b2(const Params& q, bool swapped, double, std::vector<std::string>&) {
  const double a = q.a, b = q.b, c = q.c, ab = a * b;
  std::vector<Condition> cs = cor_case1_box(q);
  cs.push_back({"1 + a + b - ab <= c < 3 - a - b + ab", 1.0 + a + b - ab <= c && c < 3.0 - a - b + ab});
  RuleOutcome out{make_match(Rule::CorCase1Branch2, q, swapped, std::move(cs)), OrderOfConvexity::uncovered()};
  if (all_hold(out.match.preconditions))
    out.kappa = OrderOfConvexity::lower_bound((2.0 * c + (a * a - 5.0 * a + 2.0) * b) / (2.0 * (b + c - ab)));
  return out;
}

// Dispatch order: -inf results, exact values, explicit corollary values, bounds.
constexpr std::array<RuleFn, 9> kDispatch = {
    rule_nec1,     rule_nec2,      rule_a1_case1,     rule_a1_case2,     rule_cvx_case1,
    rule_cvx_case2, rule_cor_case2, rule_cor_case1_b1, rule_cor_case1_b2,
};

std::string describe(const RuleOutcome& o) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(o.match.rule) << (o.match.swapped ? " (a<->b)" : "") << " gives " << to_string(o.kappa.kind);
  if (o.kappa.has_value()) os << " " << o.kappa.value;
  return os.str();
}

// Empty string when `other` is compatible with `primary`.
std::string conflict(const RuleOutcome& primary, const RuleOutcome& other, double tol) {
  const OrderOfConvexity& k = primary.kappa;
  const OrderOfConvexity& o = other.kappa;
  bool ok = true;
  if (k.kind == KappaKind::MinusInfinity) {
    ok = o.kind == KappaKind::MinusInfinity;
  } else if (k.kind == KappaKind::Finite) {
    if (o.kind == KappaKind::Finite) ok = std::abs(k.value - o.value) <= tol * std::max(1.0, std::abs(k.value));
    if (o.kind == KappaKind::LowerBoundOnly) ok = k.value >= o.value - tol;
    if (o.kind == KappaKind::MinusInfinity) ok = false;
  } else if (k.kind == KappaKind::LowerBoundOnly) {
    ok = o.kind != KappaKind::MinusInfinity;
  }
  if (ok) return {};
  return describe(primary) + " but " + describe(other);
}

Condition cond(std::string text, bool holds) { return {std::move(text), holds}; }

}  // namespace

std::string_view to_string(KappaKind k) {
  switch (k) {
    case KappaKind::Finite: return "Finite";
    case KappaKind::MinusInfinity: return "MinusInfinity";
    case KappaKind::Undefined: return "Undefined";
    case KappaKind::LowerBoundOnly: return "LowerBoundOnly";
    case KappaKind::Uncovered: return "Uncovered";
  }
  return "Uncovered";
}

std::optional<KappaKind> kappa_kind_from_string(std::string_view s) {
  for (KappaKind k : {KappaKind::Finite, KappaKind::MinusInfinity, KappaKind::Undefined, KappaKind::LowerBoundOnly,
                      KappaKind::Uncovered}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "none";
}

std::optional<Rule> rule_from_string(std::string_view s) {
  for (const auto& [rule, name] : kRuleNames)
    if (name == s) return rule;
  return std::nullopt;
}

std::string_view to_string(Convexity c) { return c == Convexity::Convex ? "convex" : "not convex"; }

cplx W_eval(const Params& p, const DiskPoint& pt, WMethod method, double tol) {
  const cplx z = pt.z;
  const cplx w = pt.w;
  if (method == WMethod::Decomposed) {
    const cplx mobius = (3.0 - p.c + (p.a + p.b - 2.0) * z) / w;
    return mobius + M_eval(p, pt, tol);
  }
  const ValueAndDerivative vd = eval_with_derivative(p, pt, tol);
  const cplx F = vd.value;
  const cplx zFp = z * vd.derivative;
  const cplx D = F + zFp;
  if (std::abs(D) <= 1e-13 * (std::abs(F) + std::abs(zFp))) {
    std::ostringstream os;
    os << "(zF)' vanishes at z = " << z;
    throw Error(ErrorCode::DerivativeZero, os.str());
  }
  // z^2 F'' from the ODE: z(1-z)F'' = abF - [c - (a+b+1)z]F'.
  const cplx q = p.c - (p.a + p.b + 1.0) * z;
  const cplx z2Fpp = z * (p.a * p.b * F - q * vd.derivative) / w;
  return 1.0 + (2.0 * zFp + z2Fpp) / D;
}

cplx W_eval(const Params& p, cplx z, WMethod method, double tol) {
  return W_eval(p, DiskPoint::at(z), method, tol);
}

cplx M_eval(const Params& p, const DiskPoint& pt, double tol) {
  const cplx numerator = (p.c - 2.0) + (1.0 - p.a) * (1.0 - p.b) * pt.z;
  if (in_cauchy_box(p)) return numerator * cauchy_factor(p, pt, tol);
  const cplx F = eval_auto(p, pt, tol).value;
  const cplx G = eval_auto(Params{p.a + 1.0, p.b, p.c}, pt, tol).value;
  // (1-a)F + aG = F + zF' = (zF)'.
  const cplx D = (1.0 - p.a) * F + p.a * G;
  if (std::abs(D) <= 1e-13 * (std::abs(F) + std::abs(p.a * G))) {
    std::ostringstream os;
    os << "(zF)' vanishes at z = " << pt.z;
    throw Error(ErrorCode::DerivativeZero, os.str());
  }
  return numerator * F / (pt.w * D);
}

cplx M_eval(const Params& p, cplx z, double tol) { return M_eval(p, DiskPoint::at(z), tol); }

double M_limit_at_1(const Params& p) {
  const double s = p.a + p.b - p.c;
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "M(z) has no finite limit at z = 1 when c >= a + b (a + b - c = " << s << ")";
    throw Error(ErrorCode::LimitNotFinite, os.str());
  }
  return cvx_numerator_at_one(p) / s;
}

KappaClosedForm kappa_closed_form(const Params& p, double tol) {
  require_usable(p);
  KappaClosedForm out;
  std::vector<RuleOutcome> fired;
  std::vector<Condition> unmatched;
  for (RuleFn fn : kDispatch) {
    RuleOutcome direct = fn(p, false, tol, out.warnings);
    const bool direct_fired = all_hold(direct.match.preconditions);
    for (const Condition& c : direct.match.preconditions)
      unmatched.push_back({"[" + std::string(to_string(direct.match.rule)) + "] " + c.text, c.holds});
    if (direct_fired) fired.push_back(std::move(direct));
    if (p.a != p.b) {
      RuleOutcome swapped = fn(swapped_params(p), true, tol, out.warnings);
      if (all_hold(swapped.match.preconditions)) fired.push_back(std::move(swapped));
    }
  }

  if (fired.empty()) {
    out.kappa = OrderOfConvexity::uncovered();
    out.regime.rule = Rule::None;
    out.regime.preconditions = std::move(unmatched);
    out.regime.p_value = p_value_of(p);
    return out;
  }

  out.kappa = fired.front().kappa;
  out.regime = fired.front().match;
  for (std::size_t i = 1; i < fired.size(); ++i) {
    const std::string msg = conflict(fired.front(), fired[i], tol);
    if (!msg.empty()) {
      out.consistent = false;
      out.warnings.push_back("inconsistent results: " + msg);
    }
    out.also_fired.push_back(std::move(fired[i]));
  }
  if (out.kappa.kind == KappaKind::Finite && out.kappa.value > 1.0 + 1e-12) {
    out.consistent = false;
    out.warnings.push_back("closed-form kappa exceeds 1");
  }
  return out;
}

std::vector<PredicateVerdict> convexity_predicates(const Params& p) {
  auto evaluate = [](const Params& q, bool swapped) {
    const double a = q.a, b = q.b, c = q.c, ab = a * b;
    const bool a_one = a == 1.0;
    const bool b_in = 0.0 < b && b <= c;
    const Admissibility adm = check_admissibility(q);
    std::vector<PredicateVerdict> v;
    auto add = [&](Rule rule, Convexity verdict, std::vector<Condition> cs) {
      PredicateVerdict pv;
      pv.match = make_match(rule, q, swapped, std::move(cs));
      pv.fired = all_hold(pv.match.preconditions);
      pv.verdict = verdict;
      v.push_back(std::move(pv));
    };
    add(Rule::CorConvex1, Convexity::Convex,
        {cond("0 < a < 1", 0.0 < a && a < 1.0), cond("0 < b < 1", 0.0 < b && b < 1.0),
         cond("c >= 1 + a + b - ab", c >= 1.0 + a + b - ab)});
    const bool box2 = 0.0 < a && a < 1.0 && 1.0 < b && b <= c;
    add(Rule::CorConvex2a, Convexity::NotConvex,
        {cond("0 < a < 1 < b <= c", box2), cond("ab < 1", ab < 1.0), cond("c < a + b", c < a + b)});
    const double root = (3.0 + std::sqrt(9.0 + 4.0 * (a * a + b * b - 3.0 * a - 3.0 * b + 2.0))) / 2.0;
    add(Rule::CorConvex2b, Convexity::NotConvex,
        {cond("0 < a < 1 < b <= c", box2), cond("ab > 1", ab > 1.0),
         cond("c < min(1 + a + b - ab, (3 + sqrt(9 + 4(a^2 + b^2 - 3a - 3b + 2)))/2)",
              c < std::min(1.0 + a + b - ab, root))});
    add(Rule::ZeroBalancedCor, Convexity::NotConvex,
        {cond("a, b not in {0, -1, -2, ...}", !adm.a_nonpositive_int && !adm.b_nonpositive_int),
         cond("ab < 1", ab < 1.0), cond("c = a + b", c == a + b)});
    add(Rule::S4Cor1, Convexity::Convex,
        {cond("a = 1", a_one), cond("0 < b <= c", b_in), cond("0 <= b <= 1", 0.0 <= b && b <= 1.0),
         cond("c >= 2", c >= 2.0)});
    add(Rule::S4Cor2, Convexity::Convex,
        {cond("a = 1", a_one), cond("0 < b <= c", b_in), cond("1 < b < 2 <= c", 1.0 < b && b < 2.0 && 2.0 <= c),
         cond("c < (4b - b^2)/(2b - 2)", 1.0 < b && c < (4.0 * b - b * b) / (2.0 * b - 2.0))});
    add(Rule::S4Cor3, Convexity::Convex,
        {cond("a = 1", a_one), cond("0 < b <= c", b_in),
         cond("1 <= c < min(2, 1 + b)", 1.0 <= c && c < std::min(2.0, 1.0 + b)), cond("c >= 3 - b", c >= 3.0 - b)});
    return v;
  };

  std::vector<PredicateVerdict> out = evaluate(p, false);
  if (p.a != p.b) {
    const std::vector<PredicateVerdict> sw = evaluate(swapped_params(p), true);
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!out[i].fired && sw[i].fired) out[i] = sw[i];
  }
  return out;
}

KustnerResult kustner_crosscheck(const Params& p) {
  if (p.c != 2.0) throw Error(ErrorCode::CaseNotApplicable, "the c = 2 closed forms need c = 2");
  auto attempt = [](const Params& q, bool swapped) -> std::optional<KustnerResult> {
    const double a = q.a, b = q.b;
    KustnerResult r;
    r.swapped = swapped;
    if (0.0 < a && a <= b && b <= 1.0) {
      // 1 - F'(a,b;1;-1) / F(a,b;1;-1), F' = ab F(a+1,b+1;2;.)
      const double f = eval_auto(Params{a, b, 1.0}, cplx(-1.0)).value.real();
      const double fp = a * b * eval_auto(Params{a + 1.0, b + 1.0, 2.0}, cplx(-1.0)).value.real();
      r.rule = Rule::ThmAa;
      r.kappa = OrderOfConvexity::finite(1.0 - fp / f);
      return r;
    }
    if (0.0 < -a && -a <= b && b <= 1.0) {
      r.rule = Rule::ThmAb;
      r.kappa = OrderOfConvexity::minus_infinity();
      return r;
    }
    if (0.0 < b && b < -a && -a <= 1.0) {
      r.rule = Rule::ThmAc;
      r.kappa = OrderOfConvexity::finite(1.0 - a * b / (a + b));
      return r;
    }
    if (0.0 < a && a < 1.0 && 1.0 < b && b <= 2.0 - a) {
      r.rule = Rule::ThmAd;
      r.kappa = OrderOfConvexity::minus_infinity();
      return r;
    }
    if (0.0 < a && a <= 1.0 && 1.0 <= b && b <= 2.0 && 2.0 < a + b) {
      r.rule = Rule::ThmAe;
      r.kappa = OrderOfConvexity::finite(1.0 + (1.0 - a) * (1.0 - b) / (a + b - 2.0) + (1.0 - a - b) / 2.0);
      return r;
    }
    return std::nullopt;
  };
  if (auto r = attempt(p, false)) return *r;
  if (p.a != p.b)
    if (auto r = attempt(swapped_params(p), true)) return *r;
  throw Error(ErrorCode::CaseNotApplicable, "none of the five c = 2 cases holds");
}

}  // namespace hypconv
