#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypconv {

using cplx = std::complex<double>;

/// Real parameter triple of 2F1(a, b; c; z).
struct Params {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Admissibility flags.  Only a non-finite value or a pole of c makes the
/// triple unusable; the remaining flags are hypotheses of individual results.
struct Admissibility {
  bool finite = true;
  bool c_pole = false;                  // c in {0, -1, -2, ...}
  bool a_nonpositive_int = false;       // a in {0, -1, -2, ...}
  bool b_nonpositive_int = false;
  bool c_minus_a_negative_int = false;  // c - a in {-1, -2, ...}
  bool c_minus_b_negative_int = false;

  bool usable() const { return finite && !c_pole; }
  bool generic() const {
    return usable() && !a_nonpositive_int && !b_nonpositive_int && !c_minus_a_negative_int &&
           !c_minus_b_negative_int;
  }
  /// Names of the raised flags, e.g. "c_pole".
  std::vector<std::string> raised() const;
};

Admissibility check_admissibility(const Params& p);

/// Throws InvalidArgument / CPole naming the violated flag unless p is usable.
void require_usable(const Params& p);

/// A point of the closed disk carried together with its distance vector to 1.
/// Near z = 1 the gap w = 1 - z cannot be recovered from z without
/// cancellation, so callers that know it exactly pass it along.
struct DiskPoint {
  cplx z;
  cplx w;  // 1 - z

  static DiskPoint at(cplx z) { return {z, 1.0 - z}; }
  /// z = (1 - gap) e^{i theta}, with 1 - z formed without cancellation.
  static DiskPoint on_circle(double gap, double theta);
};

/// Absolute value of the Gauss series term cap.  Defaults to 1'000'000 and is
/// overridden by the HYPCONV_MAX_TERMS environment variable.
std::uint64_t series_term_cap();

enum class EvalMethod {
  Series,
  Polynomial,
  PfaffSeries,
  ConnectionFormula,
  BalancedLog,
  OdeContinuation,
};

std::string_view to_string(EvalMethod m);

struct EvalResult {
  cplx value;
  std::uint64_t terms_used = 0;
  double error_bound = 0.0;
  EvalMethod method = EvalMethod::Series;
  /// Set when c - a - b is an integer (or within 1e-3 of one) and the
  /// connection formula was replaced by continuation of the ODE.
  bool connection_unavailable = false;
};

/// Value and first derivative at one point.
struct ValueAndDerivative {
  cplx value;
  cplx derivative;
  double error_bound = 0.0;
  EvalMethod method = EvalMethod::Series;
};

/// Plain Gauss series.  Requires |z| < 1; exact polynomial when a or b is a
/// nonpositive integer.  Throws NoConvergence, CPole or TermCapExceeded.
EvalResult series_eval(const Params& p, cplx z, double tol = 1e-15);

/// 2F1 anywhere in the closed unit disk except z = 1.  Picks the plain series,
/// the Pfaff-transformed series, the connection formula around z = 1, the
/// zero-balanced logarithmic expansion or ODE continuation by region.
EvalResult eval_auto(const Params& p, const DiskPoint& pt, double tol = 1e-15);
EvalResult eval_auto(const Params& p, cplx z, double tol = 1e-15);

/// The connection formula in powers of 1 - z, on its own.  Needs |1 - z| < 1.
/// Throws CaseNotApplicable when c - a - b is an integer.
EvalResult connection_eval(const Params& p, const DiskPoint& pt, double tol = 1e-15);

/// F and F' together.  F' = (ab/c) 2F1(a+1, b+1; c+1; z).
ValueAndDerivative eval_with_derivative(const Params& p, const DiskPoint& pt, double tol = 1e-15);

/// F = 2F1(a,b;c;z), G = 2F1(a+1,b;c;z), H = 2F1(a+1,b+1;c+1;z).
struct ContiguousTriple {
  EvalResult F;
  EvalResult G;
  EvalResult H;

  /// |G - F - (b/c) z H|
  double residual(const Params& p, cplx z) const;
};

ContiguousTriple contiguous_triple(const Params& p, const DiskPoint& pt, double tol = 1e-15);
ContiguousTriple contiguous_triple(const Params& p, cplx z, double tol = 1e-15);

/// F'(z) = (ab/c) H(z).
cplx derivative_2f1(const Params& p, cplx z, double tol = 1e-15);

/// Gauss sum F(a,b;c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).
/// Throws NotConvergentAtOne when c - a - b <= 0.
double value_at_one(const Params& p);

/// R(a,b) = 2 psi(1) - psi(a) - psi(b).
double ramanujan_R(double a, double b);

enum class AsymptoticCase { Below, Balanced, Above };

std::string_view to_string(AsymptoticCase c);

/// Leading behaviour of G/F = 2F1(a+1,b;c;z) / 2F1(a,b;c;z) as z -> 1:
///   Below    (a+b < c < a+b+1):  A / (1-z)^{1-alpha}, remainder O(|1-z|^{epsilon-1})
///   Balanced (c = a+b):          1 / (-a (1-z) log(1-z))
///   Above    (c < a+b):          (a+b-c) / (a (1-z))
/// `A` is the constant in front of the case's shape (1/a when balanced).
struct AsymptoticExpansion {
  AsymptoticCase kind = AsymptoticCase::Below;
  Params params;
  double alpha = 0.0;    // c - a - b
  double epsilon = 0.0;  // min(2 alpha, 1); meaningful for Below only
  double A = 0.0;

  cplx leading(const DiskPoint& pt) const;
  /// Human-readable form of the leading term.
  std::string describe() const;
};

/// Throws CaseNotApplicable when c >= a+b+1, PreconditionViolated when the
/// nondegeneracy hypotheses (a, b, c, c-a, c-b off the negative integers,
/// a, b nonzero) fail.
AsymptoticExpansion ratio_asymptotic(const Params& p);

/// Least-squares fit of G/F(x) ~ A (1-x)^exponent + B on real points x in
/// (0, 1), in relative error.  B absorbs the O(1) remainder of the expansion.
struct PowerLawFit {
  double exponent = 0.0;
  double A = 0.0;
  double B = 0.0;
};

/// Needs at least three points.  The exponent is searched in [-1.5, 0.5].
PowerLawFit fit_ratio_power_law(const Params& p, const std::vector<double>& xs);

}  // namespace hypconv
