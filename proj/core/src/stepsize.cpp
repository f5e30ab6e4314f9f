#include "fwopt/stepsize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwopt {

std::optional<double> monotonic_accept(const Objective& obj, double f_x, const Point& candidate) {
    if (!obj.in_domain(candidate)) return std::nullopt;
    const double f_new = obj.value(candidate);
    if (f_new > f_x) return std::nullopt;
    return f_new;
}

namespace {

/// Shared halving loop. Returns the accepted step; bumps *psi once per rejection
/// when it is non-null.
StepResult halve_until_accepted(double gamma, unsigned* psi, const Objective& obj, const Point& x,
                                double f_x, const Point& direction) {
    StepResult res;
    Point candidate;
    while (gamma >= 1e-300) {
        axpy_into(candidate, x, gamma, direction);
        if (auto f_new = monotonic_accept(obj, f_x, candidate)) {
            res.gamma = gamma;
            res.candidate = std::move(candidate);
            res.f_candidate = *f_new;
            return res;
        }
        if (psi) ++*psi;
        gamma *= 0.5;
    }
    // numerical exhaustion: freeze in place
    res.gamma = 0.0;
    res.candidate = x;
    res.f_candidate = f_x;
    return res;
}

}  // namespace

StepResult halving_step(HalvingState& state, std::size_t t, const Objective& obj, const Point& x,
                        double f_x, const Point& direction) {
    const double base = std::ldexp(1.0, 1 - static_cast<int>(std::min(state.halvings, 2000u)));
    const double gamma = std::min(1.0, base / (static_cast<double>(t) + 2.0));
    return halve_until_accepted(gamma, &state.halvings, obj, x, f_x, direction);
}

StepResult stateless_halving_step(std::size_t t, const Objective& obj, const Point& x, double f_x,
                                  const Point& direction) {
    return halve_until_accepted(open_loop(t), nullptr, obj, x, f_x, direction);
}

BacktrackResult backtrack(const Objective& obj, const Point& x, const Point& direction,
                          const Point& grad, double f_x, double l_prev, double gamma_max,
                          const BacktrackConfig& cfg) {
    if (!(cfg.tau > 1.0) || !(cfg.eta > 0.0) || !(cfg.eta <= 1.0)) {
        throw std::invalid_argument("backtrack: need tau > 1 and 0 < eta <= 1");
    }
    if (!(gamma_max > 0.0)) throw std::invalid_argument("backtrack: gamma_max must be positive");
    const double gd = inner(grad, direction);
    if (!(gd < 0.0)) throw std::invalid_argument("backtrack: not a descent direction");
    const double dd = inner(direction, direction);

    // Acceptance slack for the terminal phase where the true decrease falls
    // below double resolution; well inside the 1e-12*(1+|f|) audit tolerance.
    const double slack = 1e-13 * (1.0 + std::fabs(f_x));

    double l = std::max(cfg.eta * l_prev, 1e-10);
    Point candidate;
    while (true) {
        const double gamma = std::min(-gd / (l * dd), gamma_max);
        axpy_into(candidate, x, gamma, direction);
        if (obj.in_domain(candidate)) {
            const double f_new = obj.value(candidate);
            const double bound = f_x + gamma * gd + 0.5 * l * gamma * gamma * dd;
            // the monotone guard matters only at the numerical floor, where the
            // true decrease falls below one ulp of f
            if (f_new <= bound + slack && f_new <= f_x) {
                BacktrackResult res;
                res.gamma = gamma;
                res.lipschitz = l;
                res.f_candidate = f_new;
                res.candidate = std::move(candidate);
                return res;
            }
        }
        l *= cfg.tau;
        if (l > 1e300) {
            throw std::runtime_error("backtrack: smoothness estimate diverged");
        }
    }
}

double init_smoothness(const Objective& obj, const Point& x0, const Point& v0, double eps) {
    check_same_dim(x0, v0);
    Point d(x0.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = v0[i] - x0[i];
    const double dn = euclidean_norm(d);
    if (dn == 0.0) throw std::invalid_argument("init_smoothness: v0 equals x0");

    const Point g0 = obj.gradient(x0);
    Point probe;
    for (int k = 0; k <= 50; ++k) {
        axpy_into(probe, x0, eps, d);
        if (obj.in_domain(probe)) {
            const Point g1 = obj.gradient(probe);
            double diff = 0.0;
            for (std::size_t i = 0; i < g0.size(); ++i) diff += (g0[i] - g1[i]) * (g0[i] - g1[i]);
            const double l = std::sqrt(diff) / (eps * dn);
            return std::max(l, 1e-10);
        }
        eps *= 0.5;
    }
    return 1.0;
}

}  // namespace fwopt
