#pragma once

#include <functional>

#include "fwopt/lmo.hpp"
#include "fwopt/objective.hpp"
#include "fwopt/point.hpp"
#include "fwopt/stepsize.hpp"
#include "fwopt/trace.hpp"
#include "fwopt/vertex.hpp"

namespace fwopt {

/// Optional per-iteration hook; receives the iterate after the record for that
/// iteration is written. Tests use it to audit feasibility and domain membership.
using IterateObserver = std::function<void(std::size_t iter, const Point& x)>;

/// <grad, x - v_dense> where v_dense is the LMO minimizer for grad.
inline double fw_gap(const Point& grad, const Point& x, const Point& v_dense) {
    return inner(grad, x) - inner(grad, v_dense);
}

/// Frank-Wolfe with the open-loop step 2/(t+2); candidates that leave dom f or
/// increase f are rejected and the iterate stays put (a frozen step). Gradient
/// and vertex are reused across frozen iterations, so a frozen iteration costs
/// at most one domain test plus one function evaluation.
RunTrace run_mfw(const Objective& obj, const FeasibleSet& set, Point x0, const StopCriteria& stop,
                 const IterateObserver& observer = {});

/// Open-loop variant with the carried halving counter.
RunTrace run_halving_mfw(const Objective& obj, const FeasibleSet& set, Point x0,
                         const StopCriteria& stop, const IterateObserver& observer = {});

/// Open-loop variant restarting the halving search every iteration.
RunTrace run_stateless_mfw(const Objective& obj, const FeasibleSet& set, Point x0,
                           const StopCriteria& stop, const IterateObserver& observer = {});

/// Frank-Wolfe with the adaptive backtracking step size.
RunTrace run_bfw(const Objective& obj, const FeasibleSet& set, Point x0,
                 const BacktrackConfig& cfg, const StopCriteria& stop,
                 const IterateObserver& observer = {});

/// Away-step Frank-Wolfe with the adaptive step size. x0 seeds the active set
/// with weight one; pass a polytope vertex, or Vertex::atom for a feasible
/// interior start when no vertex lies in dom f.
RunTrace run_bafw(const Objective& obj, const FeasibleSet& set, const Vertex& x0,
                  const BacktrackConfig& cfg, const StopCriteria& stop,
                  const IterateObserver& observer = {});

}  // namespace fwopt
