#include "fwopt/active_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwopt {

namespace {

std::size_t find_vertex(const std::vector<Vertex>& vs, const Vertex& v) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] == v) return i;
    }
    return vs.size();
}

}  // namespace

ActiveSet::ActiveSet(Vertex v0, std::size_t dim) {
    x_ = v0.dense(dim);
    vertices_.push_back(std::move(v0));
    weights_.push_back(1.0);
}

void ActiveSet::fw_update(const Vertex& v, double gamma, Point new_iterate) {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("fw_update: gamma outside [0,1]");
    for (double& w : weights_) w *= (1.0 - gamma);
    const std::size_t i = find_vertex(vertices_, v);
    if (i == vertices_.size()) {
        vertices_.push_back(v);
        weights_.push_back(gamma);
    } else {
        weights_[i] += gamma;
    }
    x_ = std::move(new_iterate);

    // cleanup of numerically dead vertices
    std::size_t out = 0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        if (weights_[k] > kWeightCleanupTol) {
            if (out != k) {
                vertices_[out] = std::move(vertices_[k]);
                weights_[out] = weights_[k];
            }
            ++out;
        }
    }
    vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(out), vertices_.end());
    weights_.resize(out);
}

bool ActiveSet::away_update(const Vertex& a, double gamma, Point new_iterate) {
    const std::size_t i = find_vertex(vertices_, a);
    if (i == vertices_.size()) throw std::invalid_argument("away_update: vertex not in active set");
    const double gmax = away_gamma_max(a);
    if (gamma < 0.0 || gamma > gmax + 1e-12) {
        throw std::invalid_argument("away_update: gamma exceeds lambda/(1-lambda)");
    }
    for (double& w : weights_) w *= (1.0 + gamma);
    weights_[i] -= gamma;
    x_ = std::move(new_iterate);

    bool dropped = false;
    if (weights_[i] <= kWeightCleanupTol) {
        vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(i));
        weights_.erase(weights_.begin() + static_cast<std::ptrdiff_t>(i));
        dropped = true;
    }
    return dropped;
}

double ActiveSet::away_gamma_max(const Vertex& a) const {
    const std::size_t i = find_vertex(vertices_, a);
    if (i == vertices_.size()) throw std::invalid_argument("away_gamma_max: vertex not in active set");
    const double lambda = weights_[i];
    if (lambda >= 1.0) return 1e12;
    return std::min(lambda / (1.0 - lambda), 1e12);
}

std::pair<std::size_t, double> ActiveSet::away_vertex(const Point& g) const {
    if (vertices_.empty()) throw std::logic_error("away_vertex: empty active set");
    std::size_t best = 0;
    double best_val = vertices_[0].dot(g);
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        const double val = vertices_[i].dot(g);
        if (val > best_val) {  // strict: ties keep insertion order
            best = i;
            best_val = val;
        }
    }
    return {best, best_val};
}

void ActiveSet::renormalize_weights() {
    double sum = 0.0;
    for (double w : weights_) sum += w;
    if (sum <= 0.0) throw std::logic_error("active set weights sum to zero");
    for (double& w : weights_) w /= sum;
}

void ActiveSet::check_invariants(double tol) const {
    double sum = 0.0;
    for (double w : weights_) {
        if (w <= 0.0) throw std::logic_error("active set weight not positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw std::logic_error("active set weights do not sum to 1");

    Point recon(x_.size(), 0.0);
    for (std::size_t i = 0; i < vertices_.size(); ++i) vertices_[i].add_scaled_to(recon, weights_[i]);
    double err = 0.0;
    for (std::size_t i = 0; i < recon.size(); ++i) err += (recon[i] - x_[i]) * (recon[i] - x_[i]);
    err = std::sqrt(err);
    if (err > tol * (1.0 + euclidean_norm(x_))) {
        throw std::logic_error("active set iterate does not match its convex combination");
    }
}

ActiveSet active_set_update_fw(ActiveSet s, const Vertex& v, double gamma) {
    Point next = s.iterate();
    scale_inplace(next, 1.0 - gamma);
    v.add_scaled_to(next, gamma);
    s.fw_update(v, gamma, std::move(next));
    return s;
}

ActiveSet active_set_update_away(ActiveSet s, const Vertex& a, double gamma) {
    Point next = s.iterate();
    scale_inplace(next, 1.0 + gamma);
    a.add_scaled_to(next, -gamma);
    s.away_update(a, gamma, std::move(next));
    return s;
}

}  // namespace fwopt
