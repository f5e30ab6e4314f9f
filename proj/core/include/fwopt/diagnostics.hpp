#pragma once

#include <cstddef>
#include <vector>

#include "fwopt/objective.hpp"
#include "fwopt/point.hpp"
#include "fwopt/trace.hpp"

namespace fwopt {

/// omega_nu(tau) from the generalized self-concordant descent inequality.
/// Closed forms for nu in {2,3,4}, the general expression otherwise; the
/// tau -> 0 limit 1/2 is returned below |tau| = 1e-6 where the quotient
/// cancels catastrophically. Requires tau < 1 when nu > 2.
double omega_nu(double nu, double tau);

/// d_nu(x, y): M ||y-x|| for nu = 2, else
/// (nu/2 - 1) M ||y-x||^(3-nu) ||y-x||_{Hess f(x)}^(nu-2).
/// A negative Hessian quadratic form (numerical noise) is clamped to zero;
/// *clamped reports it when non-null.
double d_nu(const GscParams& p, const Objective& obj, const Point& x, const Point& y,
            bool* clamped = nullptr);

/// Burn-in iteration count: ceil(4MD) - 2 for nu = 2, else
/// ceil(2 M D L^(nu/2-1) (nu-2)) - 2; clamped below at 0.
long burn_in_T(const GscParams& p, double diameter, double smoothness);

/// Two-phase bound dominating sequences with h_t - h_{t+1} >= h_t min{c1, c2 h_t^alpha}
/// started at h_1 <= c0 below the phase threshold (c1/c2)^(1/alpha):
///   c0 (1-c1)^(t-1)                                 for 1 <= t <= t0
///   (c1/c2)^(1/alpha) / (1 + c1 alpha (t-t0))^(1/alpha)  for t > t0
/// with t0 = max{1, floor(log_{1-c1}((c1/c2)^(1/alpha) / c0))}.
double contraction_envelope(double c0, double c1, double c2, double alpha, std::size_t t);

enum class GapKind { Primal, FW, MinFW };

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Least squares on explicitly given (x, y) pairs.
RateFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Least-squares line on (log t, log gap) over iterations in [t_lo, t_hi].
/// Primal gaps use f_value - f_ref; MinFW uses the running minimum of the FW
/// gap from the start of the trace. Nonpositive gaps are dropped; fewer than
/// 10 surviving points is an error.
RateFit fit_rate(const RunTrace& trace, GapKind kind, std::size_t t_lo, std::size_t t_hi,
                 double f_ref = 0.0);

/// Least-squares line on (t, log h) over the records whose primal gap lies in
/// [h_lo, h_hi]; detects geometric decay. Same minimum-point rule.
RateFit fit_geometric(const RunTrace& trace, double f_ref, double h_lo, double h_hi);

/// Worst relative error of the analytic gradient against central differences
/// with h = h_scale*(1+||x||) per coordinate, over coordinates with
/// |g_i| > 1e-8. Probes outside dom f shrink h up to 50 times, then the
/// coordinate is skipped.
double fd_gradient_audit(const Objective& obj, const Point& x, double h_scale = 1e-6);

}  // namespace fwopt
