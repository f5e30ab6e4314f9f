#include "fwopt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fwopt {

double omega_nu(double nu, double tau) {
    if (!(nu >= 2.0)) throw std::invalid_argument("omega_nu: nu must be >= 2");
    if (nu > 2.0 && tau >= 1.0) throw std::domain_error("omega_nu: tau must be < 1 for nu > 2");
    if (std::fabs(tau) < 1e-6) return 0.5;

    if (nu == 2.0) return (std::exp(tau) - tau - 1.0) / (tau * tau);
    if (nu == 3.0) return (-tau - std::log1p(-tau)) / (tau * tau);
    if (nu == 4.0) return ((1.0 - tau) * std::log1p(-tau) + tau) / (tau * tau);

    const double a = 2.0 * (3.0 - nu) / (2.0 - nu);
    const double inner = (nu - 2.0) / (2.0 * (3.0 - nu) * tau) * (std::pow(1.0 - tau, a) - 1.0) - 1.0;
    return (nu - 2.0) / (4.0 - nu) * inner / tau;
}

double d_nu(const GscParams& p, const Objective& obj, const Point& x, const Point& y,
            bool* clamped) {
    if (clamped) *clamped = false;
    check_same_dim(x, y);
    Point d(x.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = y[i] - x[i];
    const double dn = euclidean_norm(d);
    if (dn == 0.0) return 0.0;
    if (p.nu == 2.0) return p.M * dn;

    double quad = inner(d, obj.hessian_vec(x, d));
    if (quad < 0.0) {
        quad = 0.0;
        if (clamped) *clamped = true;
    }
    const double hess_norm = std::sqrt(quad);
    return (p.nu / 2.0 - 1.0) * p.M * std::pow(dn, 3.0 - p.nu) * std::pow(hess_norm, p.nu - 2.0);
}

long burn_in_T(const GscParams& p, double diameter, double smoothness) {
    double raw;
    if (p.nu == 2.0) {
        raw = std::ceil(4.0 * p.M * diameter) - 2.0;
    } else {
        raw = std::ceil(2.0 * p.M * diameter * std::pow(smoothness, p.nu / 2.0 - 1.0) * (p.nu - 2.0)) - 2.0;
    }
    return raw < 0.0 ? 0L : static_cast<long>(raw);
}

double contraction_envelope(double c0, double c1, double c2, double alpha, std::size_t t) {
    if (!(c0 > 0.0) || !(c1 > 0.0) || !(c1 < 1.0) || !(c2 > 0.0) || !(alpha > 0.0) || t < 1) {
        throw std::invalid_argument("contraction_envelope: bad parameters");
    }
    const double threshold = std::pow(c1 / c2, 1.0 / alpha);
    const double crossing = std::log(threshold / c0) / std::log(1.0 - c1);
    const double t0 = std::max(1.0, std::floor(crossing));
    const double td = static_cast<double>(t);
    if (td <= t0) return c0 * std::pow(1.0 - c1, td - 1.0);
    return threshold / std::pow(1.0 + c1 * alpha * (td - t0), 1.0 / alpha);
}

RateFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("fit_line: need matching vectors of size >= 2");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points = xs.size();
    return fit;
}

RateFit fit_rate(const RunTrace& trace, GapKind kind, std::size_t t_lo, std::size_t t_hi,
                 double f_ref) {
    std::vector<double> xs, ys;
    double running_min = std::numeric_limits<double>::infinity();
    for (const IterationRecord& rec : trace.records) {
        double gap = 0.0;
        switch (kind) {
            case GapKind::Primal: gap = rec.f_value - f_ref; break;
            case GapKind::FW: gap = rec.fw_gap; break;
            case GapKind::MinFW:
                running_min = std::min(running_min, rec.fw_gap);
                gap = running_min;
                break;
        }
        if (rec.iter < t_lo || rec.iter > t_hi) continue;
        if (!(gap > 0.0) || rec.iter == 0) continue;
        xs.push_back(std::log(static_cast<double>(rec.iter)));
        ys.push_back(std::log(gap));
    }
    if (xs.size() < 10) throw std::runtime_error("fit_rate: fewer than 10 usable points in window");
    return fit_line(xs, ys);
}

RateFit fit_geometric(const RunTrace& trace, double f_ref, double h_lo, double h_hi) {
    std::vector<double> xs, ys;
    for (const IterationRecord& rec : trace.records) {
        const double h = rec.f_value - f_ref;
        if (!(h > 0.0) || h < h_lo || h > h_hi) continue;
        xs.push_back(static_cast<double>(rec.iter));
        ys.push_back(std::log(h));
    }
    if (xs.size() < 10) throw std::runtime_error("fit_geometric: fewer than 10 usable points");
    return fit_line(xs, ys);
}

double fd_gradient_audit(const Objective& obj, const Point& x, double h_scale) {
    if (!obj.in_domain(x)) throw std::domain_error("fd_gradient_audit: x outside dom f");
    const Point g = obj.gradient(x);
    // power-of-two probe step: x +- h is exact for well-scaled coordinates
    const double h0 = std::exp2(std::floor(std::log2(h_scale * (1.0 + euclidean_norm(x)))));

    double worst = 0.0;
    Point probe(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::fabs(g[i]) <= 1e-8) continue;
        double h = h0;
        bool ok = false;
        double fd = 0.0;
        for (int attempt = 0; attempt <= 50; ++attempt) {
            probe[i] = x[i] + h;
            const bool plus_ok = obj.in_domain(probe);
            double f_plus = plus_ok ? obj.value(probe) : 0.0;
            probe[i] = x[i] - h;
            const bool minus_ok = plus_ok && obj.in_domain(probe);
            if (minus_ok) {
                const double f_minus = obj.value(probe);
                fd = (f_plus - f_minus) / (2.0 * h);
                ok = true;
                break;
            }
            h *= 0.5;
        }
        probe[i] = x[i];
        if (!ok) continue;  // probes kept escaping the domain; skip coordinate
        worst = std::max(worst, std::fabs(fd - g[i]) / std::fabs(g[i]));
    }
    return worst;
}

}  // namespace fwopt
