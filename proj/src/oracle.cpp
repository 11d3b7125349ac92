#include "hypconv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypconv/error.hpp"
#include "hypconv/parallel.hpp"

namespace hypconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRefinedMinima = 64;
// Decrement ratios per decade of gap: above kDivergingRatio the minima keep
// falling by a non-shrinking amount, below kConvergingRatio they settle
// geometrically.
constexpr double kDivergingRatio = 0.95;
constexpr double kConvergingRatio = 0.9;
constexpr double kResolvedNoise = 1e-6;

struct Sample {
  double theta = 0.0;
  double re_w = 0.0;
  double noise = 0.0;  // rounding scale of the cancelling terms
};

double wrap_angle(double t) {
  while (t <= -kPi) t += 2.0 * kPi;
  while (t > kPi) t -= 2.0 * kPi;
  return t;
}

struct Derivative {
  cplx F;
  cplx zFp;
  cplx D;  // (zF)' = F + zF'
};

Derivative derivative_at(const Params& p, const DiskPoint& pt, double tol) {
  const ValueAndDerivative vd = eval_with_derivative(p, pt, tol);
  return {vd.value, pt.z * vd.derivative, vd.value + pt.z * vd.derivative};
}

[[noreturn]] void throw_derivative_zero(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(zF)' vanishes at z = " << z;
  throw Error(ErrorCode::DerivativeZero, os.str());
}

// Re W = Re[(3 - c + (a+b-2) z)/(1-z)] + Re[N F / ((1-z)(zF)')], with the
// Moebius part written through w = 1 - z only.
Sample sample_at(const Params& p, double gap, double theta, double tol) {
  const DiskPoint pt = DiskPoint::on_circle(gap, theta);
  const Derivative d = derivative_at(p, pt, tol);
  if (std::abs(d.D) <= 1e-14 * (std::abs(d.F) + std::abs(d.zFp))) throw_derivative_zero(pt.z);
  const double alpha = 3.0 - p.c;
  const double beta = p.a + p.b - 2.0;
  const double pole = (alpha + beta) * pt.w.real() / std::norm(pt.w);
  const cplx numerator = (p.c - 2.0) + (1.0 - p.a) * (1.0 - p.b) * pt.z;
  const cplx m = numerator * d.F / (pt.w * d.D);
  const double noise = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(pole) + std::abs(beta) + std::abs(m));
  return {theta, pole - beta + m.real(), noise};
}

std::vector<double> base_angles(double gap, int samples) {
  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(samples) + 200);
  for (int k = 1; k <= samples; ++k) thetas.push_back(-kPi + 2.0 * kPi * k / samples);
  // Geometric ladder towards theta = 0, down to the scale of the gap.
  const double step = 2.0 * kPi / samples;
  for (double t = gap; t < 4.0 * step; t *= std::sqrt(2.0)) {
    thetas.push_back(t);
    thetas.push_back(-t);
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  return thetas;
}

std::vector<Sample> circle_samples(const Params& p, double gap, int samples, double tol, int refine_depth,
                                   unsigned threads) {
  const std::vector<double> thetas = base_angles(gap, samples);
  std::vector<Sample> out(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) {
    out[i] = sample_at(p, gap, thetas[i], tol);
  });

  // Local minima on the cyclic grid, smallest first.
  const std::size_t n = out.size();
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = out[(i + n - 1) % n].re_w;
    const double next = out[(i + 1) % n].re_w;
    if (out[i].re_w <= prev && out[i].re_w <= next) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t x, std::size_t y) {
    return out[x].re_w < out[y].re_w || (out[x].re_w == out[y].re_w && x < y);
  });
  if (minima.size() > static_cast<std::size_t>(kMaxRefinedMinima)) minima.resize(kMaxRefinedMinima);

  std::vector<std::vector<Sample>> refined(minima.size());
  parallel_for(minima.size(), threads, [&](std::size_t m) {
    const std::size_t i = minima[m];
    double centre = out[i].theta;
    double best = out[i].re_w;
    double hl = wrap_angle(centre - out[(i + n - 1) % n].theta);
    double hr = wrap_angle(out[(i + 1) % n].theta - centre);
    if (hl <= 0.0) hl += 2.0 * kPi;
    if (hr <= 0.0) hr += 2.0 * kPi;
    for (int level = 0; level < refine_depth; ++level) {
      hl *= 0.5;
      hr *= 0.5;
      const double tl = wrap_angle(centre - hl);
      const double tr = wrap_angle(centre + hr);
      const Sample sl = sample_at(p, gap, tl, tol);
      const Sample sr = sample_at(p, gap, tr, tol);
      refined[m].push_back(sl);
      refined[m].push_back(sr);
      const double vl = sl.re_w;
      const double vr = sr.re_w;
      if (vl < best && vl <= vr) {
        best = vl;
        centre = tl;
        hr = hl;
      } else if (vr < best) {
        best = vr;
        centre = tr;
        hl = hr;
      }
    }
  });
  for (const auto& chain : refined) out.insert(out.end(), chain.begin(), chain.end());
  std::sort(out.begin(), out.end(), [](const Sample& x, const Sample& y) { return x.theta < y.theta; });
  out.erase(std::unique(out.begin(), out.end(), [](const Sample& x, const Sample& y) { return x.theta == y.theta; }),
            out.end());
  return out;
}

std::vector<ProfilePoint> to_profile(const std::vector<Sample>& s) {
  std::vector<ProfilePoint> out;
  out.reserve(s.size());
  for (const Sample& x : s) out.push_back({x.theta, x.re_w});
  return out;
}

// Sum of argument increments of (zF)' along the circle |z - centre| = rho,
// bisecting any step whose increment exceeds pi/4.
double argument_change(const Params& p, cplx centre, double rho, double gap_if_unit, int base, double tol,
                       unsigned threads) {
  auto point = [&](double t) {
    if (gap_if_unit > 0.0) return DiskPoint::on_circle(gap_if_unit, t);
    return DiskPoint::at(centre + std::polar(rho, t));
  };
  auto value = [&](double t) {
    const Derivative d = derivative_at(p, point(t), tol);
    if (d.D == 0.0) throw_derivative_zero(point(t).z);
    return d.D;
  };
  std::vector<double> thetas;
  if (gap_if_unit > 0.0) {
    thetas = base_angles(gap_if_unit, base);
  } else {
    for (int k = 1; k <= base; ++k) thetas.push_back(-kPi + 2.0 * kPi * k / base);
  }
  std::vector<cplx> values(thetas.size());
  parallel_for(thetas.size(), threads, [&](std::size_t i) { values[i] = value(thetas[i]); });

  double total = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const std::size_t j = (i + 1) % thetas.size();
    double t0 = thetas[i];
    double t1 = thetas[j];
    if (t1 <= t0) t1 += 2.0 * kPi;
    struct Span {
      double t0, t1;
      cplx v0, v1;
      int depth;
    };
    std::vector<Span> stack{{t0, t1, values[i], values[j], 0}};
    while (!stack.empty()) {
      const Span s = stack.back();
      stack.pop_back();
      const double step = std::arg(s.v1 / s.v0);
      if (std::abs(step) <= kPi / 4.0 || s.depth >= 40) {
        total += step;
        continue;
      }
      const double tm = 0.5 * (s.t0 + s.t1);
      const cplx vm = value(wrap_angle(tm));
      stack.push_back({tm, s.t1, vm, s.v1, s.depth + 1});
      stack.push_back({s.t0, tm, s.v0, vm, s.depth + 1});
    }
  }
  return total;
}

int winding_number(double total_arg) { return static_cast<int>(std::lround(total_arg / (2.0 * kPi))); }

ZeroScanReport zero_scan_impl(const Params& p, double gap, int grid, double tol, unsigned threads) {
  require_usable(p);
  const double r_max = 1.0 - gap;
  ZeroScanReport rep;
  rep.winding = winding_number(argument_change(p, 0.0, r_max, gap, std::max(1024, 4 * grid), tol, threads));

  // Polar grid of |(zF)'| with the origin as the innermost node.
  const int nr = grid;
  const int nt = grid;
  std::vector<double> mod(static_cast<std::size_t>(nr * nt));
  std::vector<double> scale(mod.size());
  auto node = [&](int i, int j) {
    return std::polar(r_max * (i + 1) / nr, 2.0 * kPi * j / nt);
  };
  parallel_for(mod.size(), threads, [&](std::size_t k) {
    const int i = static_cast<int>(k) / nt;
    const int j = static_cast<int>(k) % nt;
    const Derivative d = derivative_at(p, DiskPoint::at(node(i, j)), tol);
    mod[k] = std::abs(d.D);
    scale[k] = std::abs(d.F) + std::abs(d.zFp);
  });
  rep.min_modulus = 1.0;  // |(zF)'(0)| = 1
  std::size_t best = mod.size();
  std::vector<cplx> starts;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * nt + j);
      if (mod[k] < rep.min_modulus) {
        rep.min_modulus = mod[k];
        best = k;
      }
      const double left = mod[static_cast<std::size_t>(i * nt + (j + nt - 1) % nt)];
      const double right = mod[static_cast<std::size_t>(i * nt + (j + 1) % nt)];
      const double inner = i > 0 ? mod[static_cast<std::size_t>((i - 1) * nt + j)] : 1.0;
      const double outer = i + 1 < nr ? mod[static_cast<std::size_t>((i + 1) * nt + j)] : mod[k];
      if (mod[k] <= left && mod[k] <= right && mod[k] <= inner && mod[k] <= outer &&
          mod[k] < 0.5 * scale[k])
        starts.push_back(node(i, j));
    }
  }

  // Newton on (zF)' with (zF)'' = 2F' + [abF - (c - (a+b+1)z) F'] / (1 - z).
  for (cplx z : starts) {
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const ValueAndDerivative vd = eval_with_derivative(p, DiskPoint::at(z), tol);
      const cplx D = vd.value + z * vd.derivative;
      const cplx q = p.c - (p.a + p.b + 1.0) * z;
      const cplx Dp = 2.0 * vd.derivative + (p.a * p.b * vd.value - q * vd.derivative) / (1.0 - z);
      if (Dp == 0.0) break;
      const cplx step = D / Dp;
      z -= step;
      if (std::abs(z) >= r_max) break;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged || std::abs(z) >= r_max) continue;
    const Derivative d = derivative_at(p, DiskPoint::at(z), tol);
    const double modulus = std::abs(d.D);
    rep.min_modulus = std::min(rep.min_modulus, modulus);
    if (modulus > 1e-6 * (std::abs(d.F) + std::abs(d.zFp))) continue;
    const double rho = std::min(1e-3, 0.5 * (r_max - std::abs(z)));
    if (rho <= 0.0) continue;
    if (winding_number(argument_change(p, z, rho, 0.0, 64, tol, 1)) >= 1) {
      rep.found = true;
      rep.location = z;
      break;
    }
  }
  if (!rep.found && rep.winding > 0) {
    rep.found = true;
    if (best < mod.size()) rep.location = node(static_cast<int>(best) / nt, static_cast<int>(best) % nt);
  }
  return rep;
}

double aitken(double m0, double m1, double m2) {
  const double d1 = m1 - m0;
  const double d2 = m2 - m1;
  const double den = d2 - d1;
  if (den == 0.0) return m2;
  return m2 - d2 * d2 / den;
}

}  // namespace

std::string_view to_string(Trend t) {
  switch (t) {
    case Trend::Converging: return "converging";
    case Trend::DivergingDown: return "diverging-down";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::optional<Trend> trend_from_string(std::string_view s) {
  for (Trend t : {Trend::Converging, Trend::DivergingDown, Trend::Inconclusive})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::string_view to_string(NecCheck c) { return c == NecCheck::MatchesNec ? "matches-nec" : "not-applicable"; }

ScanConfig ScanConfig::standard() {
  ScanConfig cfg;
  for (int k = 1; k <= 12; ++k) cfg.gaps.push_back(std::pow(10.0, -k));
  return cfg;
}

ScanConfig ScanConfig::shallow() { return from_radii({0.9, 0.99, 0.999, 0.9999}); }

ScanConfig ScanConfig::from_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "at least one radius is needed");
  ScanConfig cfg;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, "radii must lie in (0, 1)");
    if (i && !(radii[i - 1] < r)) throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing");
    cfg.gaps.push_back(1.0 - r);
  }
  return cfg;
}

std::vector<double> ScanConfig::radii() const {
  std::vector<double> out;
  for (double g : gaps) out.push_back(1.0 - g);
  return out;
}

std::vector<ProfilePoint> boundary_profile_gap(const Params& p, double gap, int samples, double tol, int refine_depth,
                                               unsigned threads) {
  require_usable(p);
  if (!(gap > 0.0 && gap < 1.0)) throw Error(ErrorCode::InvalidArgument, "the radius must lie in (0, 1)");
  if (samples < 3) throw Error(ErrorCode::InvalidArgument, "at least 3 samples per circle");
  const ZeroScanReport zeros = zero_scan_impl(p, gap, 64, tol, threads);
  if (zeros.found) throw_derivative_zero(zeros.location);
  return to_profile(circle_samples(p, gap, samples, tol, refine_depth, threads));
}

std::vector<ProfilePoint> boundary_profile(const Params& p, double r, int samples, double tol, int refine_depth,
                                           unsigned threads) {
  return boundary_profile_gap(p, 1.0 - r, samples, tol, refine_depth, threads);
}

ZeroScanReport derivative_zero_scan(const Params& p, double r_max, int grid) {
  if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorCode::InvalidArgument, "r_max must lie in (0, 1)");
  if (grid < 4) throw Error(ErrorCode::InvalidArgument, "the zero-scan grid needs at least 4 nodes per axis");
  return zero_scan_impl(p, 1.0 - r_max, grid, 1e-15, 0);
}

NumericKappa estimate_kappa(const Params& p, const ScanConfig& cfg, double tol) {
  require_usable(p);
  if (cfg.gaps.empty()) throw Error(ErrorCode::InvalidArgument, "no radii to scan");
  for (std::size_t i = 0; i < cfg.gaps.size(); ++i) {
    if (!(cfg.gaps[i] > 0.0 && cfg.gaps[i] < 1.0) || (i > 0 && !(cfg.gaps[i] < cfg.gaps[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "radii must be strictly increasing inside (0, 1)");
  }

  NumericKappa out;
  out.scan.theta_samples = cfg.theta_samples;
  out.zeros = zero_scan_impl(p, cfg.gaps.back(), cfg.zero_grid, tol, cfg.threads);
  if (out.zeros.found) {
    out.kappa = OrderOfConvexity::undefined();
    return out;
  }

  for (double gap : cfg.gaps) {
    const std::vector<Sample> s = circle_samples(p, gap, cfg.theta_samples, tol, cfg.refine_depth, cfg.threads);
    const auto it = std::min_element(s.begin(), s.end(), [](const Sample& x, const Sample& y) {
      return x.re_w < y.re_w;
    });
    out.scan.per_radius_min.push_back({1.0 - gap, gap, it->re_w, it->theta, it->noise});
  }

  // Only radii whose minimum is resolved above rounding enter the analysis.
  const auto& mins = out.scan.per_radius_min;
  std::size_t n = 0;
  while (n < mins.size() && mins[n].noise <= kResolvedNoise * (1.0 + std::abs(mins[n].min_re_w))) ++n;
  out.scan.resolved = n;
  for (std::size_t i = 1; i < n; ++i)
    out.scan.monotonicity_defect = std::max(out.scan.monotonicity_defect, mins[i].min_re_w - mins[i - 1].min_re_w);
  if (n == 0) return out;

  auto m = [&](std::size_t i) { return mins[i].min_re_w; };
  const double last = m(n - 1);

  if (n >= 2 && last < cfg.divergence_threshold && m(n - 2) < 0.0 && last / m(n - 2) >= cfg.divergence_growth) {
    out.scan.trend = Trend::DivergingDown;
    out.kappa = OrderOfConvexity::minus_infinity();
    return out;
  }
  if (n < 4) return out;

  const double d3 = m(n - 2) - m(n - 1);
  const double d2 = m(n - 3) - m(n - 2);
  const double d1 = m(n - 4) - m(n - 3);
  const double settled = std::max(1e-9 * (1.0 + std::abs(last)), 10.0 * mins[n - 1].noise);
  if (std::abs(d3) <= settled && std::abs(d2) <= settled) {
    out.scan.trend = Trend::Converging;
    out.kappa = OrderOfConvexity::finite(last);
    out.uncertainty = std::abs(d3);
    return out;
  }
  const double r3 = d3 / d2;
  const double r2 = d2 / d1;
  if (d3 > 0.0 && d2 > 0.0 && d1 > 0.0 && r3 >= kDivergingRatio && r2 >= kDivergingRatio) {
    out.scan.trend = Trend::DivergingDown;
    out.kappa = OrderOfConvexity::minus_infinity();
    return out;
  }
  if (std::abs(r3) < kConvergingRatio && std::abs(r2) < kConvergingRatio) {
    const double estimate = aitken(m(n - 3), m(n - 2), m(n - 1));
    const double previous = aitken(m(n - 4), m(n - 3), m(n - 2));
    out.scan.trend = Trend::Converging;
    out.kappa = OrderOfConvexity::finite(estimate);
    out.uncertainty = std::abs(last - estimate);
    out.spread = std::abs(estimate - previous);
  }
  return out;
}

OrderOfConvexity kappa_numeric(const Params& p, const ScanConfig& cfg, double tol) {
  const NumericKappa r = estimate_kappa(p, cfg, tol);
  if (r.kappa) return *r.kappa;
  std::ostringstream os;
  os.precision(10);
  os << "boundary minima neither converge nor diverge:";
  for (const RadiusMinimum& x : r.scan.per_radius_min) os << " (" << x.gap << ", " << x.min_re_w << ")";
  throw Error(ErrorCode::Inconclusive, os.str());
}

NecCheck asymptotic_divergence_check(const Params& p) {
  require_usable(p);
  const double a = p.a, b = p.b, c = p.c, ab = a * b;
  const bool cond1 = 0.0 < ab && ab < 1.0 && a + b <= c && c < 1.0 + a + b - ab;
  const bool cond2 = ab < 0.0 && a + b <= c && c < 1.0 + a + b;
  if (!check_admissibility(p).generic() || !(cond1 || cond2)) return NecCheck::NotApplicable;

  const double pv = c - 1.0 - a - b + ab;
  for (double sign : {1.0, -1.0}) {
    std::vector<double> values;
    for (int k = 2; k <= 10; ++k) {
      const double r = std::pow(10.0, -k);
      const double theta = sign * (kPi / 2.0 - std::sqrt(r));
      const cplx w = std::polar(r, theta);
      const DiskPoint pt{1.0 - w, w};
      const Derivative d = derivative_at(p, pt, 1e-15);
      if (d.D == 0.0) throw_derivative_zero(pt.z);
      values.push_back((pv * d.F / (w * d.D)).real());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i) monotone = monotone && values[i] < values[i - 1];
    const std::size_t n = values.size();
    const double last_drop = values[n - 2] - values[n - 1];
    const double prev_drop = values[n - 3] - values[n - 2];
    if (!monotone || last_drop < 0.5 * prev_drop) {
      std::ostringstream os;
      os.precision(10);
      os << "Re[p/((1-z)(1-a+aG/F))] along theta -> " << (sign > 0 ? "+" : "-") << "pi/2 is not falling without bound:";
      for (double v : values) os << " " << v;
      throw Error(ErrorCode::Inconclusive, os.str());
    }
  }
  return NecCheck::MatchesNec;
}

}  // namespace hypconv
