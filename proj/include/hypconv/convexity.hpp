#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypconv/hyp2f1.hpp"

namespace hypconv {

enum class KappaKind { Finite, MinusInfinity, Undefined, LowerBoundOnly, Uncovered };

std::string_view to_string(KappaKind k);
std::optional<KappaKind> kappa_kind_from_string(std::string_view s);

/// Order of convexity kappa(zF) = 1 + inf_D Re(z f''/f') in [-inf, 1].
/// `value` is set for Finite and LowerBoundOnly, NaN otherwise.
struct OrderOfConvexity {
  KappaKind kind = KappaKind::Uncovered;
  double value = std::numeric_limits<double>::quiet_NaN();

  static OrderOfConvexity finite(double v) { return {KappaKind::Finite, v}; }
  static OrderOfConvexity lower_bound(double v) { return {KappaKind::LowerBoundOnly, v}; }
  static OrderOfConvexity minus_infinity() { return {KappaKind::MinusInfinity}; }
  static OrderOfConvexity undefined() { return {KappaKind::Undefined}; }
  static OrderOfConvexity uncovered() { return {KappaKind::Uncovered}; }

  bool has_value() const { return kind == KappaKind::Finite || kind == KappaKind::LowerBoundOnly; }

  /// Values compare equal when both are NaN.
  friend bool operator==(const OrderOfConvexity& x, const OrderOfConvexity& y) {
    return x.kind == y.kind && (x.value == y.value || (x.value != x.value && y.value != y.value));
  }
};

enum class Rule {
  None,
  ThmNec1,
  ThmNec2,
  ZeroBalancedCor,
  ThmA1Case1,
  ThmA1Case2,
  ThmCvxCase1,
  ThmCvxCase2,
  CorCase1Branch1,
  CorCase1Branch2,
  CorCase2,
  CorConvex1,
  CorConvex2a,
  CorConvex2b,
  S4Cor1,
  S4Cor2,
  S4Cor3,
  ThmAa,
  ThmAb,
  ThmAc,
  ThmAd,
  ThmAe,
};

std::string_view to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view s);

struct Condition {
  std::string text;
  bool holds = false;

  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Which result produced a kappa value and the hypotheses it was checked
/// against.  `swapped` marks a result applied to (b, a, c); 2F1 is symmetric
/// in a and b so this changes nothing about the function.
struct RegimeMatch {
  Rule rule = Rule::None;
  std::vector<Condition> preconditions;
  double p_value = 0.0;  // c - 1 - a - b + ab
  bool swapped = false;

  friend bool operator==(const RegimeMatch&, const RegimeMatch&) = default;
};

struct RuleOutcome {
  RegimeMatch match;
  OrderOfConvexity kappa;
};

struct KappaClosedForm {
  OrderOfConvexity kappa;
  RegimeMatch regime;
  /// Other results whose hypotheses also hold, in dispatch order.
  std::vector<RuleOutcome> also_fired;
  std::vector<std::string> warnings;
  /// False when two fired results contradict each other.
  bool consistent = true;
};

/// W(z) = 1 + z (zF)''/(zF)'.
enum class WMethod { Direct, Decomposed };

/// Direct: from F and F' with F'' eliminated through the hypergeometric ODE.
/// Decomposed: (3 - c + (a+b-2) z)/(1-z) + M(z).
/// Throws DerivativeZero when (zF)' vanishes numerically at the point.
cplx W_eval(const Params& p, const DiskPoint& pt, WMethod method, double tol = 1e-15);
cplx W_eval(const Params& p, cplx z, WMethod method, double tol = 1e-15);

/// M(z) = (c - 2 + (1-a)(1-b) z) / ((1-z)(1 - a + a G/F)).
cplx M_eval(const Params& p, const DiskPoint& pt, double tol = 1e-15);
cplx M_eval(const Params& p, cplx z, double tol = 1e-15);

/// lim_{z->1} M(z) = (c - 2 + (1-a)(1-b)) / (a + b - c) for c < a + b.
/// Throws LimitNotFinite otherwise.
double M_limit_at_1(const Params& p);

/// Closed-form kappa over every covered regime, most specific result first:
/// kappa = -inf results, the a = 1 results, the general results for 0 < a < 1,
/// Corollary-style explicit values, then lower bounds.  Overlapping results
/// are all evaluated and cross-checked.
KappaClosedForm kappa_closed_form(const Params& p, double tol = 1e-10);

enum class Convexity { Convex, NotConvex };

std::string_view to_string(Convexity c);

struct PredicateVerdict {
  RegimeMatch match;
  bool fired = false;
  Convexity verdict = Convexity::Convex;
};

/// Every sufficient condition for convexity / non-convexity, evaluated
/// literally on (a, b, c) and on (b, a, c).
std::vector<PredicateVerdict> convexity_predicates(const Params& p);

/// Kuestner's closed forms for c = 2.  Throws CaseNotApplicable when c != 2
/// or none of the five cases holds.
struct KustnerResult {
  Rule rule = Rule::None;
  OrderOfConvexity kappa;
  bool swapped = false;
};

KustnerResult kustner_crosscheck(const Params& p);

}  // namespace hypconv
