#include "fwopt/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fwopt/active_set.hpp"

namespace fwopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Recorder {
    RunTrace trace;
    Clock::time_point t0 = Clock::now();
    const IterateObserver* observer = nullptr;
    std::size_t stall = 0;

    void add(std::size_t iter, double f, double gap, double gamma, StepType st,
             const OracleCounters& counters, const Point& x,
             double w_gap = std::numeric_limits<double>::quiet_NaN()) {
        IterationRecord rec;
        rec.iter = iter;
        rec.wall_time = seconds_since(t0);
        rec.f_value = f;
        rec.fw_gap = gap;
        rec.step_size = gamma;
        rec.step_type = st;
        rec.counters = counters;
        rec.away_fw_gap = w_gap;
        trace.records.push_back(rec);
        if (f < trace.best_f) {
            trace.best_f = f;
            stall = 0;
        } else {
            ++stall;
        }
        if (observer && *observer) (*observer)(iter, x);
    }

    std::optional<TerminalStatus> budget_exceeded(const StopCriteria& stop) const {
        if (stop.time_limit_s && seconds_since(t0) > *stop.time_limit_s) {
            return TerminalStatus::TimeLimit;
        }
        if (stop.max_stall_iters && stall >= *stop.max_stall_iters) {
            return TerminalStatus::MaxIter;
        }
        return std::nullopt;
    }
};

void validate_start(const FeasibleSet& set, const Point& x0) {
    if (x0.size() != set.dim()) throw std::invalid_argument("x0 dimension mismatch");
    if (!all_finite(x0)) throw std::invalid_argument("x0 has non-finite entries");
    if (!set.contains(x0)) throw std::invalid_argument("x0 is not feasible");
}

/// Candidate x + gamma*(dense(v) - x) built as (1-gamma)*x + gamma*v.
Point mix_with_vertex(const Point& x, const Vertex& v, double gamma) {
    Point out(x);
    scale_inplace(out, 1.0 - gamma);
    v.add_scaled_to(out, gamma);
    return out;
}

enum class OpenLoopKind { Plain, Halving, Stateless };

RunTrace run_open_loop(OpenLoopKind kind, const Objective& obj, const FeasibleSet& set, Point x0,
                       const StopCriteria& stop, const IterateObserver& observer) {
    validate_start(set, x0);
    CountedObjective cobj(obj);
    OracleCounters& counters = cobj.counters();
    if (!cobj.in_domain(x0)) throw std::domain_error("x0 is outside dom f");

    Point x = std::move(x0);
    double f_x = cobj.value(x);
    Point grad = cobj.gradient(x);
    Vertex v = set.lmo(grad);
    ++counters.lmo;

    Recorder rec;
    rec.observer = &observer;
    rec.trace.initial_counters = counters;
    rec.trace.terminal_status = TerminalStatus::MaxIter;
    rec.t0 = Clock::now();

    HalvingState halving;
    Point direction;

    for (std::size_t t = 0; t < stop.max_iter; ++t) {
        const double gap = inner(grad, x) - v.dot(grad);
        if (gap <= stop.fw_gap_tol) {
            rec.add(t, f_x, gap, 0.0, StepType::FW, counters, x);
            rec.trace.terminal_status = TerminalStatus::GapReached;
            break;
        }

        bool moved = false;
        double gamma_taken = 0.0;
        if (kind == OpenLoopKind::Plain) {
            const double gamma = open_loop(t);
            Point candidate = mix_with_vertex(x, v, gamma);
            if (auto f_new = monotonic_accept(cobj, f_x, candidate)) {
                x = std::move(candidate);
                f_x = *f_new;
                moved = true;
                gamma_taken = gamma;
            }
        } else {
            direction.assign(x.size(), 0.0);
            v.add_scaled_to(direction, 1.0);
            for (std::size_t i = 0; i < direction.size(); ++i) direction[i] -= x[i];
            StepResult sr = kind == OpenLoopKind::Halving
                                ? halving_step(halving, t, cobj, x, f_x, direction)
                                : stateless_halving_step(t, cobj, x, f_x, direction);
            if (sr.gamma > 0.0) {
                x = std::move(sr.candidate);
                f_x = sr.f_candidate;
                moved = true;
                gamma_taken = sr.gamma;
            }
        }

        if (moved) {
            // refresh the cache now so frozen iterations show no FOO/LMO activity
            grad = cobj.gradient(x);
            v = set.lmo(grad);
            ++counters.lmo;
            rec.add(t, f_x, gap, gamma_taken, StepType::FW, counters, x);
        } else {
            rec.add(t, f_x, gap, 0.0, StepType::Frozen, counters, x);
        }

        if (auto exceeded = rec.budget_exceeded(stop)) {
            rec.trace.terminal_status = *exceeded;
            break;
        }
    }
    return std::move(rec.trace);
}

}  // namespace

RunTrace run_mfw(const Objective& obj, const FeasibleSet& set, Point x0, const StopCriteria& stop,
                 const IterateObserver& observer) {
    return run_open_loop(OpenLoopKind::Plain, obj, set, std::move(x0), stop, observer);
}

RunTrace run_halving_mfw(const Objective& obj, const FeasibleSet& set, Point x0,
                         const StopCriteria& stop, const IterateObserver& observer) {
    return run_open_loop(OpenLoopKind::Halving, obj, set, std::move(x0), stop, observer);
}

RunTrace run_stateless_mfw(const Objective& obj, const FeasibleSet& set, Point x0,
                           const StopCriteria& stop, const IterateObserver& observer) {
    return run_open_loop(OpenLoopKind::Stateless, obj, set, std::move(x0), stop, observer);
}

RunTrace run_bfw(const Objective& obj, const FeasibleSet& set, Point x0,
                 const BacktrackConfig& cfg, const StopCriteria& stop,
                 const IterateObserver& observer) {
    validate_start(set, x0);
    CountedObjective cobj(obj);
    OracleCounters& counters = cobj.counters();
    if (!cobj.in_domain(x0)) throw std::domain_error("x0 is outside dom f");

    Point x = std::move(x0);
    double f_x = cobj.value(x);
    Point grad = cobj.gradient(x);
    Vertex v = set.lmo(grad);
    ++counters.lmo;
    double l_est = cfg.l_init ? *cfg.l_init : init_smoothness(cobj, x, v.dense(x.size()));

    Recorder rec;
    rec.observer = &observer;
    rec.trace.initial_counters = counters;
    rec.t0 = Clock::now();

    Point direction;
    for (std::size_t t = 0; t < stop.max_iter; ++t) {
        const double gap = inner(grad, x) - v.dot(grad);
        if (gap <= stop.fw_gap_tol) {
            rec.add(t, f_x, gap, 0.0, StepType::FW, counters, x);
            rec.trace.terminal_status = TerminalStatus::GapReached;
            break;
        }
        direction.assign(x.size(), 0.0);
        v.add_scaled_to(direction, 1.0);
        for (std::size_t i = 0; i < direction.size(); ++i) direction[i] -= x[i];

        BacktrackResult br = backtrack(cobj, x, direction, grad, f_x, l_est, 1.0, cfg);
        x = std::move(br.candidate);
        f_x = br.f_candidate;
        l_est = br.lipschitz;
        grad = cobj.gradient(x);
        v = set.lmo(grad);
        ++counters.lmo;

        rec.add(t, f_x, gap, br.gamma, StepType::FW, counters, x);
        if (auto exceeded = rec.budget_exceeded(stop)) {
            rec.trace.terminal_status = *exceeded;
            break;
        }
    }
    return std::move(rec.trace);
}

RunTrace run_bafw(const Objective& obj, const FeasibleSet& set, const Vertex& x0,
                  const BacktrackConfig& cfg, const StopCriteria& stop,
                  const IterateObserver& observer) {
    ActiveSet active(x0, set.dim());
    validate_start(set, active.iterate());
    CountedObjective cobj(obj);
    OracleCounters& counters = cobj.counters();
    if (!cobj.in_domain(active.iterate())) throw std::domain_error("x0 is outside dom f");

    double f_x = cobj.value(active.iterate());
    Point grad = cobj.gradient(active.iterate());
    Vertex v = set.lmo(grad);
    ++counters.lmo;
    double l_est = cfg.l_init ? *cfg.l_init : init_smoothness(cobj, active.iterate(), v.dense(set.dim()));

    Recorder rec;
    rec.observer = &observer;
    rec.trace.initial_counters = counters;
    rec.t0 = Clock::now();

    Point direction;
    for (std::size_t t = 0; t < stop.max_iter; ++t) {
        const Point& x = active.iterate();
        const double gx = inner(grad, x);
        const double gap = gx - v.dot(grad);
        const auto [away_idx, away_val] = active.away_vertex(grad);
        const double away_gap = away_val - gx;
        const double w_gap = gap + away_gap;

        if (gap <= stop.fw_gap_tol) {
            rec.add(t, f_x, gap, 0.0, StepType::FW, counters, x, w_gap);
            rec.trace.terminal_status = TerminalStatus::GapReached;
            break;
        }

        const bool fw_direction = gap >= away_gap;
        double gamma_max = 1.0;
        Vertex away = active.vertex(away_idx);  // copy: updates may reorder the set
        direction.resize(x.size());
        if (fw_direction) {
            direction.assign(x.size(), 0.0);
            v.add_scaled_to(direction, 1.0);
            for (std::size_t i = 0; i < direction.size(); ++i) direction[i] -= x[i];
        } else {
            direction = x;
            away.add_scaled_to(direction, -1.0);
            gamma_max = active.away_gamma_max(away);
        }

        BacktrackResult br = backtrack(cobj, x, direction, grad, f_x, l_est, gamma_max, cfg);
        l_est = br.lipschitz;
        f_x = br.f_candidate;

        StepType st;
        if (fw_direction) {
            active.fw_update(v, br.gamma, std::move(br.candidate));
            st = StepType::FW;
        } else {
            const bool dropped = active.away_update(away, br.gamma, std::move(br.candidate));
            st = dropped ? StepType::Drop : StepType::Away;
        }

        grad = cobj.gradient(active.iterate());
        v = set.lmo(grad);
        ++counters.lmo;

        rec.add(t, f_x, gap, br.gamma, st, counters, active.iterate(), w_gap);

        if ((t & 4095U) == 4095U) {
            active.renormalize_weights();
            active.check_invariants(1e-7);
        }
        if (auto exceeded = rec.budget_exceeded(stop)) {
            rec.trace.terminal_status = *exceeded;
            break;
        }
    }
    return std::move(rec.trace);
}

}  // namespace fwopt
