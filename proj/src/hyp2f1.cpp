#include "hypconv/hyp2f1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "hypconv/error.hpp"
#include "hypconv/special_fn.hpp"

namespace hypconv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Radius inside which the plain (or Pfaff-transformed) series is used.
constexpr double kSeriesRadius = 0.75;
// |1 - z| below which the expansions around z = 1 take over.
constexpr double kNearOneRadius = 0.5;
// Distance of c - a - b from an integer below which the connection formula
// cancels too badly and ODE continuation is used instead.
constexpr double kIntegerGuard = 1e-3;

bool terminates(const Params& p) {
  return is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b);
}

// Sum of the Gauss series.  `tol` is relative.  The loop stops once three
// consecutive terms are below tol * |sum| (and n >= 8) and a rigorous
// geometric majorant for the remaining terms exists.
EvalResult gauss_series(double a, double b, double c, cplx z, double tol, EvalMethod method) {
  const std::uint64_t cap = series_term_cap();
  const double az = std::abs(z);
  cplx term = 1.0;
  cplx sum = 1.0;
  double abs_sum = 1.0;
  int small_run = 0;
  std::uint64_t n = 0;
  double rho = 1.0;
  for (;;) {
    if (n >= cap) {
      std::ostringstream os;
      os << "Gauss series for (" << a << ", " << b << "; " << c << ") at |z| = " << az
         << " did not converge in " << cap << " terms";
      throw Error(ErrorCode::TermCapExceeded, os.str());
    }
    const double k = static_cast<double>(n);
    term *= ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z;
    ++n;
    sum += term;
    const double at = std::abs(term);
    abs_sum += at;
    if (at == 0.0 && (is_nonpositive_integer(a) || is_nonpositive_integer(b))) {
      rho = 0.0;
      break;
    }
    if (at <= tol * std::abs(sum) || at <= kEps * kEps * abs_sum) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= 3 && n >= 8) {
      // Both factors of t_{k+1}/t_k = (a+k)/(k+1) * (b+k)/(c+k) * z are
      // monotone in k once k+1 > 0 and c+k > 0, and tend to 1.
      const double kn = static_cast<double>(n);
      if (c + kn > 0.0) {
        const double f1 = std::max(std::abs((a + kn) / (kn + 1.0)), 1.0);
        const double f2 = std::max(std::abs((b + kn) / (c + kn)), 1.0);
        rho = az * f1 * f2;
        if (rho < 1.0) break;
      }
    }
  }
  EvalResult r;
  r.value = sum;
  r.terms_used = n;
  r.method = method;
  const double tail = rho > 0.0 ? std::abs(term) * rho / (1.0 - rho) : 0.0;
  r.error_bound = tail + 4.0 * kEps * abs_sum;
  return r;
}

EvalResult polynomial(const Params& p, cplx z) {
  EvalResult r = gauss_series(p.a, p.b, p.c, z, 0.0, EvalMethod::Polynomial);
  r.method = EvalMethod::Polynomial;
  return r;
}

EvalResult scaled(EvalResult r, cplx factor) {
  r.value *= factor;
  r.error_bound *= std::abs(factor);
  return r;
}

// F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)).
EvalResult pfaff(const Params& p, const DiskPoint& pt, double tol) {
  const cplx zeta = -pt.z / pt.w;
  EvalResult inner = gauss_series(p.a, p.c - p.b, p.c, zeta, tol, EvalMethod::PfaffSeries);
  return scaled(inner, std::pow(pt.w, -p.a));
}

// Connection formula around z = 1 for non-integer m = c - a - b:
//   F = Gamma(c)Gamma(m)/(Gamma(c-a)Gamma(c-b)) F(a,b;1-m;1-z)
//     + (1-z)^m Gamma(c)Gamma(-m)/(Gamma(a)Gamma(b)) F(c-a,c-b;1+m;1-z).
EvalResult connection(const Params& p, const DiskPoint& pt, double tol) {
  const double m = p.c - p.a - p.b;
  const double gc = gamma_real(p.c);
  const double g1 = gc * gamma_real(m) * rgamma_real(p.c - p.a) * rgamma_real(p.c - p.b);
  const double g2 = gc * gamma_real(-m) * rgamma_real(p.a) * rgamma_real(p.b);

  EvalResult r;
  r.method = EvalMethod::ConnectionFormula;
  cplx value = 0.0;
  double err = 0.0;
  double magnitude = 0.0;
  if (g1 != 0.0) {
    const EvalResult s = gauss_series(p.a, p.b, 1.0 - m, pt.w, tol, EvalMethod::Series);
    value += g1 * s.value;
    err += std::abs(g1) * s.error_bound;
    magnitude += std::abs(g1 * s.value);
    r.terms_used += s.terms_used;
  }
  if (g2 != 0.0) {
    const cplx wm = std::pow(pt.w, m);
    const EvalResult s = gauss_series(p.c - p.a, p.c - p.b, 1.0 + m, pt.w, tol, EvalMethod::Series);
    value += g2 * wm * s.value;
    err += std::abs(g2 * wm) * s.error_bound;
    magnitude += std::abs(g2 * wm * s.value);
    r.terms_used += s.terms_used;
  }
  r.value = value;
  // Cancellation between the two branches costs digits in proportion to
  // their size relative to the result.
  r.error_bound = err + 8.0 * kEps * magnitude;
  return r;
}

// Zero-balanced expansion (c = a + b):
//   F = Gamma(a+b)/(Gamma(a)Gamma(b)) sum_k (a)_k (b)_k / (k!)^2
//         [2 psi(k+1) - psi(a+k) - psi(b+k) - log(1-z)] (1-z)^k.
EvalResult balanced_log(const Params& p, const DiskPoint& pt, double tol) {
  const double a = p.a;
  const double b = p.b;
  const double pref = gamma_real(a + b) * rgamma_real(a) * rgamma_real(b);
  const cplx log_w = std::log(pt.w);
  double h = ramanujan_R(a, b);
  cplx u = 1.0;
  cplx sum = h - log_w;
  double abs_sum = std::abs(sum);
  int small_run = 0;
  std::uint64_t k = 0;
  cplx last = sum;
  const std::uint64_t cap = series_term_cap();
  while (true) {
    if (k >= cap) throw Error(ErrorCode::TermCapExceeded, "zero-balanced expansion did not converge");
    const double kk = static_cast<double>(k);
    u *= ((a + kk) * (b + kk) / ((kk + 1.0) * (kk + 1.0))) * pt.w;
    h += 2.0 / (kk + 1.0) - 1.0 / (a + kk) - 1.0 / (b + kk);
    ++k;
    last = u * (h - log_w);
    sum += last;
    abs_sum += std::abs(last);
    if (std::abs(last) <= tol * std::abs(sum) || std::abs(last) <= kEps * kEps * abs_sum) {
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= 3 && k >= 8) break;
  }
  EvalResult r;
  r.value = pref * sum;
  r.terms_used = k;
  r.method = EvalMethod::BalancedLog;
  const double q = std::abs(pt.w);
  r.error_bound = std::abs(pref) * (2.0 * std::abs(last) * q / (1.0 - q) + 8.0 * kEps * abs_sum);
  return r;
}

// Taylor continuation of the hypergeometric ODE
//   z(1-z) y'' + [c - (a+b+1) z] y' - ab y = 0
// from a point where the Gauss series converges fast.  The current point is
// tracked as (zeta, omega = 1 - zeta) so that targets close to z = 1 keep
// full relative accuracy in 1 - z.
ValueAndDerivative ode_continue(const Params& p, const DiskPoint& target) {
  const double a = p.a;
  const double b = p.b;
  const double c = p.c;
  const double az = std::abs(target.z);
  const cplx dir = target.z / az;
  cplx zeta = 0.5 * dir;
  cplx omega = 1.0 - zeta;

  cplx y0 = gauss_series(a, b, c, zeta, kEps, EvalMethod::Series).value;
  cplx y1 = (a * b == 0.0)
                ? cplx(0.0)
                : (a * b / c) * gauss_series(a + 1, b + 1, c + 1, zeta, kEps, EvalMethod::Series).value;
  double err_rel = 4.0 * kEps;

  const double p2 = -1.0;
  const double q1 = -(a + b + 1.0);
  const double r0 = -a * b;
  for (int step = 0; step < 10000; ++step) {
    const cplx d = omega - target.w;
    const double dist = std::abs(d);
    if (dist == 0.0) break;
    const double radius = std::min(std::abs(zeta), std::abs(omega));
    const bool last_step = dist <= 0.5 * radius;
    const cplx s = last_step ? d : d * (0.5 * radius / dist);

    const cplx p0 = zeta * omega;
    const cplx p1 = omega - zeta;
    const cplx q0 = c - (a + b + 1.0) * zeta;

    // e_k = c_k s^k
    cplx e_prev = y0;
    cplx e_cur = y1 * s;
    cplx val = e_prev + e_cur;
    cplx der = y1;
    double abs_val = std::abs(e_prev) + std::abs(e_cur);
    int small_run = 0;
    int k = 0;
    for (; k < 600; ++k) {
      const double kk = k;
      const cplx num = (p1 * (kk * (kk + 1.0)) + q0 * (kk + 1.0)) * s * e_cur +
                       (p2 * kk * (kk - 1.0) + q1 * kk + r0) * s * s * e_prev;
      const cplx e_next = -num / (p0 * ((kk + 1.0) * (kk + 2.0)));
      val += e_next;
      der += (kk + 2.0) * e_next / s;
      abs_val += std::abs(e_next);
      e_prev = e_cur;
      e_cur = e_next;
      if (std::abs(e_next) <= 0.25 * kEps * std::abs(val)) {
        if (++small_run >= 3 && k >= 4) break;
      } else {
        small_run = 0;
      }
    }
    err_rel += 4.0 * kEps * abs_val / std::max(std::abs(val), std::numeric_limits<double>::min());
    y0 = val;
    y1 = der;
    if (last_step) {
      zeta = target.z;
      omega = target.w;
      break;
    }
    zeta += s;
    omega -= s;
  }
  ValueAndDerivative out;
  out.value = y0;
  out.derivative = y1;
  out.method = EvalMethod::OdeContinuation;
  out.error_bound = err_rel * std::abs(y0);
  return out;
}

enum class Route { Poly, Direct, Pfaff, Connection, Balanced, Ode };

Route choose_route(const Params& p, const DiskPoint& pt) {
  if (terminates(p)) return Route::Poly;
  if (std::abs(pt.w) < kNearOneRadius) {
    const double m = p.c - p.a - p.b;
    if (m == 0.0) return Route::Balanced;
    if (std::abs(m - std::round(m)) < kIntegerGuard) return Route::Ode;
    return Route::Connection;
  }
  const double az = std::abs(pt.z);
  if (az <= kSeriesRadius) return Route::Direct;
  if (az <= kSeriesRadius * std::abs(pt.w)) return Route::Pfaff;
  return Route::Ode;
}

void check_domain(const DiskPoint& pt) {
  if (!std::isfinite(pt.z.real()) || !std::isfinite(pt.z.imag()))
    throw Error(ErrorCode::InvalidArgument, "z must be finite");
  if (std::abs(pt.z) > 1.0 + 1e-15)
    throw Error(ErrorCode::NoConvergence, "z lies outside the closed unit disk");
  if (pt.w == 0.0) throw Error(ErrorCode::NoConvergence, "z = 1 is the singular point");
}

}  // namespace

std::vector<std::string> Admissibility::raised() const {
  std::vector<std::string> out;
  if (!finite) out.emplace_back("non_finite");
  if (c_pole) out.emplace_back("c_pole");
  if (a_nonpositive_int) out.emplace_back("a_nonpositive_int");
  if (b_nonpositive_int) out.emplace_back("b_nonpositive_int");
  if (c_minus_a_negative_int) out.emplace_back("c_minus_a_negative_int");
  if (c_minus_b_negative_int) out.emplace_back("c_minus_b_negative_int");
  return out;
}

Admissibility check_admissibility(const Params& p) {
  Admissibility adm;
  adm.finite = std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.c);
  if (!adm.finite) return adm;
  adm.c_pole = is_nonpositive_integer(p.c);
  adm.a_nonpositive_int = is_nonpositive_integer(p.a);
  adm.b_nonpositive_int = is_nonpositive_integer(p.b);
  adm.c_minus_a_negative_int = is_nonpositive_integer(p.c - p.a) && p.c - p.a != 0.0;
  adm.c_minus_b_negative_int = is_nonpositive_integer(p.c - p.b) && p.c - p.b != 0.0;
  return adm;
}

void require_usable(const Params& p) {
  const Admissibility adm = check_admissibility(p);
  if (!adm.finite) throw Error(ErrorCode::InvalidArgument, "non_finite: parameters must be finite reals");
  if (adm.c_pole) {
    std::ostringstream os;
    os << "c_pole: c = " << p.c << " is a nonpositive integer";
    throw Error(ErrorCode::CPole, os.str());
  }
}

DiskPoint DiskPoint::on_circle(double gap, double theta) {
  const double r = 1.0 - gap;
  const double s = std::sin(0.5 * theta);
  const cplx z = std::polar(r, theta);
  const cplx w(2.0 * s * s + gap * std::cos(theta), -r * std::sin(theta));
  return {z, w};
}

std::uint64_t series_term_cap() {
  static const std::uint64_t cap = [] {
    std::uint64_t v = 1'000'000;
    if (const char* env = std::getenv("HYPCONV_MAX_TERMS")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0) v = parsed;
    }
    return v;
  }();
  return cap;
}

std::string_view to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::Series: return "series";
    case EvalMethod::Polynomial: return "polynomial";
    case EvalMethod::PfaffSeries: return "pfaff-series";
    case EvalMethod::ConnectionFormula: return "connection-formula";
    case EvalMethod::BalancedLog: return "balanced-log";
    case EvalMethod::OdeContinuation: return "ode-continuation";
  }
  return "unknown";
}

EvalResult series_eval(const Params& p, cplx z, double tol) {
  require_usable(p);
  if (terminates(p)) return polynomial(p, z);
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << "the Gauss series needs |z| < 1, got |z| = " << std::abs(z);
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return gauss_series(p.a, p.b, p.c, z, tol, EvalMethod::Series);
}

EvalResult eval_auto(const Params& p, const DiskPoint& pt, double tol) {
  require_usable(p);
  check_domain(pt);
  switch (choose_route(p, pt)) {
    case Route::Poly: return polynomial(p, pt.z);
    case Route::Direct: return gauss_series(p.a, p.b, p.c, pt.z, tol, EvalMethod::Series);
    case Route::Pfaff: return pfaff(p, pt, tol);
    case Route::Connection: return connection(p, pt, tol);
    case Route::Balanced: return balanced_log(p, pt, tol);
    case Route::Ode: {
      const ValueAndDerivative vd = ode_continue(p, pt);
      EvalResult r;
      r.value = vd.value;
      r.error_bound = vd.error_bound;
      r.method = EvalMethod::OdeContinuation;
      r.connection_unavailable = std::abs(pt.w) < kNearOneRadius;
      return r;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unreachable evaluation route");
}

EvalResult connection_eval(const Params& p, const DiskPoint& pt, double tol) {
  require_usable(p);
  check_domain(pt);
  const double m = p.c - p.a - p.b;
  if (m == std::round(m)) throw Error(ErrorCode::CaseNotApplicable, "c - a - b is an integer");
  if (!(std::abs(pt.w) < 1.0)) throw Error(ErrorCode::NoConvergence, "the connection formula needs |1 - z| < 1");
  return connection(p, pt, tol);
}

EvalResult eval_auto(const Params& p, cplx z, double tol) { return eval_auto(p, DiskPoint::at(z), tol); }

ValueAndDerivative eval_with_derivative(const Params& p, const DiskPoint& pt, double tol) {
  require_usable(p);
  check_domain(pt);
  if (choose_route(p, pt) == Route::Ode) return ode_continue(p, pt);
  const EvalResult f = eval_auto(p, pt, tol);
  ValueAndDerivative out;
  out.value = f.value;
  out.method = f.method;
  out.error_bound = f.error_bound;
  if (p.a * p.b == 0.0) {
    out.derivative = 0.0;
    return out;
  }
  const EvalResult h = eval_auto(Params{p.a + 1, p.b + 1, p.c + 1}, pt, tol);
  out.derivative = (p.a * p.b / p.c) * h.value;
  return out;
}

double ContiguousTriple::residual(const Params& p, cplx z) const {
  return std::abs(G.value - F.value - (p.b / p.c) * z * H.value);
}

ContiguousTriple contiguous_triple(const Params& p, const DiskPoint& pt, double tol) {
  require_usable(p);
  ContiguousTriple t;
  t.F = eval_auto(p, pt, tol);
  t.G = eval_auto(Params{p.a + 1, p.b, p.c}, pt, tol);
  t.H = eval_auto(Params{p.a + 1, p.b + 1, p.c + 1}, pt, tol);
  return t;
}

ContiguousTriple contiguous_triple(const Params& p, cplx z, double tol) {
  return contiguous_triple(p, DiskPoint::at(z), tol);
}

cplx derivative_2f1(const Params& p, cplx z, double tol) {
  require_usable(p);
  if (p.a * p.b == 0.0) return 0.0;
  return (p.a * p.b / p.c) * eval_auto(Params{p.a + 1, p.b + 1, p.c + 1}, z, tol).value;
}

double value_at_one(const Params& p) {
  require_usable(p);
  const double m = p.c - p.a - p.b;
  if (!(m > 0.0)) {
    std::ostringstream os;
    os << "the series diverges at z = 1 since c - a - b = " << m << " <= 0";
    throw Error(ErrorCode::NotConvergentAtOne, os.str());
  }
  return gamma_real(p.c) * gamma_real(m) * rgamma_real(p.c - p.a) * rgamma_real(p.c - p.b);
}

double ramanujan_R(double a, double b) { return 2.0 * digamma_real(1.0) - digamma_real(a) - digamma_real(b); }

std::string_view to_string(AsymptoticCase c) {
  switch (c) {
    case AsymptoticCase::Below: return "below";
    case AsymptoticCase::Balanced: return "balanced";
    case AsymptoticCase::Above: return "above";
  }
  return "unknown";
}

cplx AsymptoticExpansion::leading(const DiskPoint& pt) const {
  switch (kind) {
    case AsymptoticCase::Below: return A * std::pow(pt.w, alpha - 1.0);
    case AsymptoticCase::Balanced: return 1.0 / (-params.a * pt.w * std::log(pt.w));
    case AsymptoticCase::Above: return A / pt.w;
  }
  return 0.0;
}

std::string AsymptoticExpansion::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case AsymptoticCase::Below: os << A << " / (1-z)^" << (1.0 - alpha); break;
    case AsymptoticCase::Balanced: os << "1 / (" << -params.a << " (1-z) log(1-z))"; break;
    case AsymptoticCase::Above: os << A << " / (1-z)"; break;
  }
  return os.str();
}

AsymptoticExpansion ratio_asymptotic(const Params& p) {
  require_usable(p);
  const Admissibility adm = check_admissibility(p);
  if (!adm.generic() || p.a == 0.0 || p.b == 0.0) {
    throw Error(ErrorCode::PreconditionViolated,
                "the asymptotics of G/F need a, b, c, c-a, c-b off the negative integers and a, b nonzero");
  }
  AsymptoticExpansion e;
  e.params = p;
  e.alpha = p.c - p.a - p.b;
  if (e.alpha >= 1.0) {
    throw Error(ErrorCode::CaseNotApplicable, "c >= a + b + 1: G/F stays bounded at z = 1");
  }
  if (e.alpha > 0.0) {
    e.kind = AsymptoticCase::Below;
    e.epsilon = std::min(2.0 * e.alpha, 1.0);
    e.A = gamma_real(1.0 - e.alpha) * gamma_real(p.c - p.a) * gamma_real(p.c - p.b) *
          rgamma_real(p.a + 1.0) * rgamma_real(p.b) / gamma_real(e.alpha);
  } else if (e.alpha == 0.0) {
    e.kind = AsymptoticCase::Balanced;
    e.A = 1.0 / p.a;
  } else {
    e.kind = AsymptoticCase::Above;
    e.A = -e.alpha / p.a;
  }
  return e;
}

namespace {

struct LinearFit {
  double A = 0.0;
  double B = 0.0;
  double residual = 0.0;
};

// Weighted least squares for y ~ A t + B with weights 1/y.
LinearFit fit_linear(const std::vector<double>& t, const std::vector<double>& y) {
  double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double wt = 1.0 / (y[i] * y[i]);
    s00 += wt * t[i] * t[i];
    s01 += wt * t[i];
    s11 += wt;
    r0 += wt * t[i] * y[i];
    r1 += wt * y[i];
  }
  const double det = s00 * s11 - s01 * s01;
  LinearFit f;
  f.A = (r0 * s11 - r1 * s01) / det;
  f.B = (s00 * r1 - s01 * r0) / det;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = (f.A * t[i] + f.B - y[i]) / y[i];
    f.residual += e * e;
  }
  return f;
}

}  // namespace

PowerLawFit fit_ratio_power_law(const Params& p, const std::vector<double>& xs) {
  if (xs.size() < 3) throw Error(ErrorCode::InvalidArgument, "the power-law fit needs at least three points");
  std::vector<double> w;
  std::vector<double> y;
  const Params shifted{p.a + 1.0, p.b, p.c};
  for (double x : xs) {
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::InvalidArgument, "fit points must lie in (0, 1)");
    const DiskPoint pt = DiskPoint::at(x);
    w.push_back(1.0 - x);
    y.push_back((eval_auto(shifted, pt).value / eval_auto(p, pt).value).real());
  }
  auto residual_at = [&](double e) {
    std::vector<double> t;
    for (double v : w) t.push_back(std::pow(v, e));
    return fit_linear(t, y);
  };

  // Coarse grid, then golden section around the best node.
  constexpr double lo = -1.5, hi = 0.5;
  constexpr int nodes = 400;
  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= nodes; ++i) {
    const double r = residual_at(lo + (hi - lo) * i / nodes).residual;
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  double left = lo + (hi - lo) * std::max(best - 1, 0) / nodes;
  double right = lo + (hi - lo) * std::min(best + 1, nodes) / nodes;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - g * (right - left);
  double x2 = left + g * (right - left);
  double f1 = residual_at(x1).residual;
  double f2 = residual_at(x2).residual;
  for (int it = 0; it < 200 && right - left > 1e-13; ++it) {
    if (f1 < f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - g * (right - left);
      f1 = residual_at(x1).residual;
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + g * (right - left);
      f2 = residual_at(x2).residual;
    }
  }
  const double e = 0.5 * (left + right);
  const LinearFit f = residual_at(e);
  return {e, f.A, f.B};
}

}  // namespace hypconv
