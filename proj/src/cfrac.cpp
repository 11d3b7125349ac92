#include "hypconv/cfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypconv/error.hpp"

namespace hypconv {

namespace {

constexpr double kTiny = 1e-30;
constexpr int kMaxDepth = 100'000;

double g_coefficient(const Params& p, std::size_t n) {
  if (n == 0) return 0.0;
  const double k = static_cast<double>((n + 1) / 2);
  double num = 0.0;
  double den = 0.0;
  if (n % 2 == 0) {
    num = p.a + k;
    den = p.c + 2.0 * k - 1.0;
  } else {
    num = p.b + k - 1.0;
    den = p.c + 2.0 * k - 2.0;
  }
  if (den == 0.0) {
    std::ostringstream os;
    os << "g_" << n << " has a vanishing denominator for c = " << p.c;
    throw Error(ErrorCode::DivisionByZero, os.str());
  }
  return num / den;
}

void require_box(const Params& p, const char* fn) {
  if (!in_cf_box(p)) {
    std::ostringstream os;
    os << fn << " needs -1 <= a <= c and 0 <= b <= c != 0, got (" << p.a << ", " << p.b << ", "
       << p.c << ")";
    throw Error(ErrorCode::PreconditionViolated, os.str());
  }
}

}  // namespace

CFCoefficients cf_coefficients(const Params& p, std::size_t n_max) {
  CFCoefficients out;
  out.params = p;
  out.g.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.g.push_back(g_coefficient(p, n));
  return out;
}

bool in_cf_box(const Params& p) {
  return -1.0 <= p.a && p.a <= p.c && 0.0 <= p.b && p.b <= p.c && p.c != 0.0;
}

bool in_cauchy_box(const Params& p) {
  return 0.0 < p.a && p.a <= 1.0 && 0.0 <= p.b && p.b <= p.c && p.a <= p.c;
}

cplx eval_ratio_cf(const Params& p, cplx z, double tol) {
  require_box(p, "eval_ratio_cf");
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw Error(ErrorCode::PreconditionViolated, "the continued fraction is cut along [1, +inf)");

  // S = 1 + a_1/(1 + a_2/(1 + ...)) with a_n = -(1 - g_{n-1}) g_n z; G/F = 1/S.
  cplx f = 1.0;
  cplx C = f;
  cplx D = 0.0;
  double g_prev = g_coefficient(p, 0);
  const double thresh = std::max(tol, 4.0 * std::numeric_limits<double>::epsilon());
  int settled = 0;
  for (int n = 1; n <= kMaxDepth; ++n) {
    const double g_n = g_coefficient(p, static_cast<std::size_t>(n));
    const cplx an = -(1.0 - g_prev) * g_n * z;
    g_prev = g_n;
    D = 1.0 + an * D;
    if (std::abs(D) < kTiny) D = kTiny;
    C = 1.0 + an / C;
    if (std::abs(C) < kTiny) C = kTiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) <= thresh) {
      if (++settled >= 2) return 1.0 / f;
    } else {
      settled = 0;
    }
  }
  std::ostringstream os;
  os << "continued fraction did not settle within " << kMaxDepth << " levels at z = " << z;
  throw Error(ErrorCode::CFNotConverged, os.str());
}

CircleBound wall_bounds_at_minus1(const Params& p) {
  require_box(p, "wall_bounds_at_minus1");
  return {p.c / (p.b + p.c), (2.0 * p.c - p.b) / (2.0 * p.c)};
}

cplx cauchy_factor(const Params& p, cplx z, double tol) { return cauchy_factor(p, DiskPoint::at(z), tol); }

cplx cauchy_factor(const Params& p, const DiskPoint& pt, double tol) {
  const cplx z = pt.z;
  if (!in_cauchy_box(p)) {
    std::ostringstream os;
    os << "cauchy_factor needs 0 < a <= 1, 0 <= b <= c, a <= c, got (" << p.a << ", " << p.b << ", "
       << p.c << ")";
    throw Error(ErrorCode::PreconditionViolated, os.str());
  }
  if (std::abs(z) > 1.0 + 1e-15 || pt.w == 0.0)
    throw Error(ErrorCode::PreconditionViolated, "cauchy_factor is evaluated on the closed disk minus z = 1");
  // The fraction needs ~1/sqrt|1-z| levels; close to 1 use F and G instead.
  if (std::abs(pt.w) < 1e-2) {
    const cplx F = eval_auto(p, pt, tol).value;
    const cplx G = eval_auto(Params{p.a + 1.0, p.b, p.c}, pt, tol).value;
    return F / (pt.w * ((1.0 - p.a) * F + p.a * G));
  }
  const cplx ratio = eval_ratio_cf(p, z, tol);
  return 1.0 / (pt.w * (1.0 - p.a + p.a * ratio));
}

}  // namespace hypconv
