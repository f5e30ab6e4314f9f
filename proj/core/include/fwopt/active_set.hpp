#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fwopt/point.hpp"
#include "fwopt/vertex.hpp"

namespace fwopt {

/// Vertex list with convex weights representing the current iterate of an
/// away-step run. Weights stay strictly positive after cleanup; vertices whose
/// weight falls to <= 1e-12 are removed. Duplicates are identified by the
/// structural equality of Vertex.
class ActiveSet {
public:
    /// Singleton set {v0: 1} in ambient dimension dim.
    ActiveSet(Vertex v0, std::size_t dim);

    const Point& iterate() const { return x_; }
    std::size_t size() const { return vertices_.size(); }
    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Frank-Wolfe update: weights scaled by (1-gamma), gamma added to v
    /// (appended if absent). new_iterate replaces the cached iterate; it must
    /// equal x + gamma*(dense(v) - x) as evaluated by the caller.
    void fw_update(const Vertex& v, double gamma, Point new_iterate);

    /// Away update: weights scaled by (1+gamma), gamma removed from a.
    /// gamma may not exceed away_gamma_max(a) + 1e-12. Returns true when the
    /// vertex was dropped. new_iterate must equal x + gamma*(x - dense(a)).
    bool away_update(const Vertex& a, double gamma, Point new_iterate);

    /// lambda_a / (1 - lambda_a), capped at 1e12 for full-weight vertices.
    double away_gamma_max(const Vertex& a) const;

    /// Vertex of the set maximizing <g, dense(v)> and the attained value.
    /// Ties resolve to the earliest inserted vertex. Throws when empty.
    std::pair<std::size_t, double> away_vertex(const Point& g) const;

    /// Divide weights by their sum. Call periodically on long runs so the
    /// affine weight identity does not drift.
    void renormalize_weights();

    /// Bug detector: weight positivity, sum-to-one, and iterate reconstruction
    /// within tol*(1+||x||). Throws std::logic_error on violation.
    void check_invariants(double tol = 1e-9) const;

    static constexpr double kWeightCleanupTol = 1e-12;

private:
    std::vector<Vertex> vertices_;
    std::vector<double> weights_;
    Point x_;
};

/// Functional forms of the update operations (value semantics).
ActiveSet active_set_update_fw(ActiveSet s, const Vertex& v, double gamma);
ActiveSet active_set_update_away(ActiveSet s, const Vertex& a, double gamma);

}  // namespace fwopt
