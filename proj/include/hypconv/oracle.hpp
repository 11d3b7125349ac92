#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypconv/convexity.hpp"
#include "hypconv/hyp2f1.hpp"

namespace hypconv {

enum class Trend { Converging, DivergingDown, Inconclusive };

std::string_view to_string(Trend t);
std::optional<Trend> trend_from_string(std::string_view s);

/// Scan settings.  Circles are given by their gap 1 - r so that radii very
/// close to 1 stay exact.
struct ScanConfig {
  std::vector<double> gaps;  // strictly decreasing, in (0, 1)
  int theta_samples = 4096;
  int refine_depth = 8;
  double divergence_threshold = -1e6;
  double divergence_growth = 10.0;
  int zero_grid = 64;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Gaps 1e-1, 1e-2, ..., 1e-12.
  static ScanConfig standard();
  /// Radii 0.9, 0.99, 0.999, 0.9999.
  static ScanConfig shallow();
  /// Throws InvalidArgument unless the radii increase strictly inside (0, 1).
  static ScanConfig from_radii(const std::vector<double>& radii);

  std::vector<double> radii() const;
};

struct RadiusMinimum {
  double radius = 0.0;
  double gap = 0.0;
  double min_re_w = 0.0;
  double argmin_theta = 0.0;
  /// Rounding scale of Re W at the minimiser.
  double noise = 0.0;
};

struct BoundaryScan {
  std::vector<RadiusMinimum> per_radius_min;
  int theta_samples = 0;
  Trend trend = Trend::Inconclusive;
  /// Leading radii whose minima are resolved above rounding; the trend is
  /// read from these.
  std::size_t resolved = 0;
  /// Largest increase of the minima from one radius to the next; the minimum
  /// principle says it is <= 0 when (zF)' has no zeros.
  double monotonicity_defect = 0.0;
};

struct ZeroScanReport {
  bool found = false;
  cplx location{0.0, 0.0};
  double min_modulus = 0.0;
  /// Zeros of (zF)' inside |z| < r_max by the argument principle.
  int winding = 0;
};

struct ProfilePoint {
  double theta = 0.0;
  double re_w = 0.0;
};

/// Re W on the circle |z| = r over a uniform grid of `samples` angles in
/// (-pi, pi], a geometric grid towards theta = 0 and dyadic refinement
/// (depth `refine_depth`) around every local minimum.  Sorted by theta.
/// Throws DerivativeZero when (zF)' vanishes on or inside the circle.
std::vector<ProfilePoint> boundary_profile(const Params& p, double r, int samples, double tol = 1e-15,
                                           int refine_depth = 8, unsigned threads = 0);
std::vector<ProfilePoint> boundary_profile_gap(const Params& p, double gap, int samples, double tol = 1e-15,
                                               int refine_depth = 8, unsigned threads = 0);

/// Polar grid (grid x grid) search for zeros of (zF)' = F + zF' in |z| <= r_max,
/// confirmed by winding counts.
ZeroScanReport derivative_zero_scan(const Params& p, double r_max, int grid);

struct NumericKappa {
  /// Empty when the trend is inconclusive.
  std::optional<OrderOfConvexity> kappa;
  /// Size of the last extrapolation correction.
  double uncertainty = 0.0;
  /// Difference between the last two extrapolated values.
  double spread = 0.0;
  BoundaryScan scan;
  ZeroScanReport zeros;
};

/// Zero scan, per-radius minima and the trend analysis, without throwing for
/// an inconclusive trend.
NumericKappa estimate_kappa(const Params& p, const ScanConfig& cfg = ScanConfig::standard(), double tol = 1e-15);

/// kappa = 1 + inf Re(z f''/f') estimated from the boundary minima.
/// Throws Inconclusive when the minima neither converge nor diverge.
OrderOfConvexity kappa_numeric(const Params& p, const ScanConfig& cfg = ScanConfig::standard(),
                               double tol = 1e-15);

enum class NecCheck { MatchesNec, NotApplicable };

std::string_view to_string(NecCheck c);

/// Follows z = 1 - r e^{i theta} with r -> 0 and theta -> +-pi/2 and checks that
/// Re[p / ((1-z)(1 - a + a G/F))] decreases without bound.  NotApplicable
/// unless one of the two -infinity conditions holds (in either order of a, b).
/// Throws Inconclusive when the samples are not monotone.
NecCheck asymptotic_divergence_check(const Params& p);

}  // namespace hypconv
