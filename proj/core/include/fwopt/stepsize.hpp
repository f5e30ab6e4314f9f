#pragma once

#include <optional>

#include "fwopt/objective.hpp"
#include "fwopt/point.hpp"

namespace fwopt {

/// Adaptive line search parameters. When l_init is unset the runner derives the
/// initial smoothness estimate from a gradient difference quotient at x0.
struct BacktrackConfig {
    double tau = 2.0;  ///< growth factor, > 1
    double eta = 0.9;  ///< shrink factor, <= 1
    std::optional<double> l_init;
};

/// Halving counter psi carried across iterations by the stateful variant.
struct HalvingState {
    unsigned halvings = 0;
};

/// Open-loop step size 2/(t+2).
inline double open_loop(std::size_t t) { return 2.0 / (static_cast<double>(t) + 2.0); }

/// Domain test first, value only when inside (short-circuit). Accepts iff the
/// candidate is in dom f and does not increase the objective; equal values
/// accept. Returns f(candidate) on acceptance.
std::optional<double> monotonic_accept(const Objective& obj, double f_x, const Point& candidate);

struct StepResult {
    double gamma = 0.0;
    Point candidate;
    double f_candidate = 0.0;
};

/// Start at gamma = 2^(1-psi)/(t+2) capped at 1 and halve (incrementing psi)
/// until monotonic_accept passes. Each loop trip costs at most one domain test
/// and one function evaluation. If gamma underflows below 1e-300 the step
/// freezes: gamma = 0 and the candidate is x itself.
StepResult halving_step(HalvingState& state, std::size_t t, const Objective& obj, const Point& x,
                        double f_x, const Point& direction);

/// Same loop but restarted from gamma = 2/(t+2) every iteration, no carried
/// counter.
StepResult stateless_halving_step(std::size_t t, const Objective& obj, const Point& x, double f_x,
                                  const Point& direction);

struct BacktrackResult {
    double gamma = 0.0;
    double lipschitz = 0.0;  ///< accepted local smoothness estimate
    double f_candidate = 0.0;
    Point candidate;
};

/// Adaptive step size: shrink the smoothness estimate to max(eta*l_prev, 1e-10),
/// set gamma = min(-<grad,d>/(L ||d||^2), gamma_max), and grow L by tau until the
/// candidate is in dom f and satisfies
///   f(x + gamma d) <= f(x) + gamma <grad, d> + (L gamma^2 / 2) ||d||^2
/// (domain test first). Requires <grad, d> < 0. Throws when L exceeds 1e300.
BacktrackResult backtrack(const Objective& obj, const Point& x, const Point& direction,
                          const Point& grad, double f_x, double l_prev, double gamma_max,
                          const BacktrackConfig& cfg);

/// ||grad f(x0) - grad f(x0 + eps (v0 - x0))|| / (eps ||v0 - x0||), halving eps
/// up to 50 times to keep the probe inside dom f; 1.0 when that fails.
/// Floored at 1e-10 so near-linear objectives do not produce a zero estimate.
double init_smoothness(const Objective& obj, const Point& x0, const Point& v0, double eps = 1e-3);

}  // namespace fwopt
