#pragma once

#include <cstddef>
#include <vector>

#include "hypconv/hyp2f1.hpp"

namespace hypconv {

/// Coefficient schedule g_n of the Gauss continued fraction for
/// G/F = 2F1(a+1,b;c;z) / 2F1(a,b;c;z):
///   g_0 = 0, g_{2k} = (a+k)/(c+2k-1), g_{2k-1} = (b+k-1)/(c+2k-2)  (k >= 1).
struct CFCoefficients {
  Params params;
  std::vector<double> g;  // g[0..n_max]

  double operator[](std::size_t n) const { return g.at(n); }
};

/// Throws DivisionByZero if one of the denominators vanishes up to n_max.
CFCoefficients cf_coefficients(const Params& p, std::size_t n_max);

/// Parameter box -1 <= a <= c, 0 <= b <= c, c != 0 in which the continued
/// fraction is a Stieltjes (Cauchy) transform of a probability measure.
bool in_cf_box(const Params& p);

/// G/F = 1 / (1 - (1-g0) g1 z / (1 - (1-g1) g2 z / (1 - ...))) by the modified
/// Lentz recurrence.  Valid for z off [1, +inf).  Throws PreconditionViolated
/// outside the box, CFNotConverged after 100'000 levels.
cplx eval_ratio_cf(const Params& p, cplx z, double tol = 1e-15);

/// Closed interval enclosing (G/F)(-1).
struct CircleBound {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x, double slack = 0.0) const { return x >= lower - slack && x <= upper + slack; }
};

/// [c/(b+c), (2c-b)/(2c)], from Wall's value-region circle for the tail of the
/// fraction at z = -1.  Requires the box.
CircleBound wall_bounds_at_minus1(const Params& p);

/// 1 / ((1-z)(1 - a + a G/F)), a Cauchy transform of a probability measure
/// for 0 < a <= 1, 0 <= b <= c, a <= c.  Defined on the closed disk minus 1.
cplx cauchy_factor(const Params& p, cplx z, double tol = 1e-15);
cplx cauchy_factor(const Params& p, const DiskPoint& pt, double tol = 1e-15);

/// Whether cauchy_factor's hypotheses hold.
bool in_cauchy_box(const Params& p);

}  // namespace hypconv
