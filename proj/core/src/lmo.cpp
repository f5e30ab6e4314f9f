#include "fwopt/lmo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fwopt {

namespace {

void require_finite(const Point& d) {
    if (!all_finite(d)) throw std::invalid_argument("LMO direction has non-finite entries");
}

std::size_t argmin_index(const Point& d) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d[i] < d[best]) best = i;  // strict: ties keep the lowest index
    }
    return best;
}

}  // namespace

Vertex lmo_probability_simplex(const Point& d) {
    require_finite(d);
    if (d.empty()) throw std::invalid_argument("empty direction");
    return Vertex::basis(argmin_index(d), 1.0);
}

Vertex lmo_unit_simplex(const Point& d, double radius) {
    require_finite(d);
    if (d.empty()) throw std::invalid_argument("empty direction");
    const std::size_t i = argmin_index(d);
    if (d[i] < 0.0) return Vertex::basis(i, radius);
    return Vertex::zero();
}

Vertex lmo_l1_ball(const Point& d, double radius) {
    require_finite(d);
    if (d.empty()) throw std::invalid_argument("empty direction");
    std::size_t best = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (std::fabs(d[i]) > std::fabs(d[best])) best = i;
    }
    const double sign = d[best] < 0.0 ? -1.0 : 1.0;  // sign(0) treated as +1
    return Vertex::basis(best, -radius * sign);
}

std::vector<std::uint32_t> solve_assignment(const Point& cost, std::size_t n) {
    if (cost.size() != n * n) throw std::invalid_argument("cost matrix size mismatch");
    require_finite(cost);
    const double inf = std::numeric_limits<double>::infinity();

    // Row-by-row shortest augmenting paths over the equality graph, with dual
    // potentials u (rows) and v (columns). 1-based internally; p[j] = row
    // matched to column j.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::uint32_t> sigma(n, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        if (p[j] != 0) sigma[p[j] - 1] = static_cast<std::uint32_t>(j - 1);
    }
    return sigma;
}

Vertex lmo_birkhoff(const Point& cost, std::size_t n) {
    return Vertex::permutation(solve_assignment(cost, n));
}

// --- feasible sets -----------------------------------------------------------

bool ProbabilitySimplex::contains(const Point& x) const {
    if (x.size() != n_) return false;
    double sum = 0.0;
    for (double v : x) {
        if (v < -1e-12) return false;
        sum += v;
    }
    return std::fabs(sum - 1.0) <= 1e-10;
}

Point ProbabilitySimplex::sample(SplitMix64& rng) const {
    // Dirichlet(1,...,1) via normalized exponentials
    Point x(n_);
    double sum = 0.0;
    for (double& v : x) {
        v = rng.exponential(1.0);
        sum += v;
    }
    for (double& v : x) v /= sum;
    return x;
}

double ProbabilitySimplex::diameter() const { return n_ >= 2 ? std::sqrt(2.0) : 0.0; }

bool UnitSimplex::contains(const Point& x) const {
    if (x.size() != n_) return false;
    double sum = 0.0;
    for (double v : x) {
        if (v < -1e-12) return false;
        sum += v;
    }
    return sum <= radius_ + 1e-10;
}

Point UnitSimplex::sample(SplitMix64& rng) const {
    Point x(n_);
    double sum = 0.0;
    for (double& v : x) {
        v = rng.exponential(1.0);
        sum += v;
    }
    const double scale = radius_ * rng.uniform01() / sum;
    for (double& v : x) v *= scale;
    return x;
}

double UnitSimplex::diameter() const { return n_ >= 2 ? radius_ * std::sqrt(2.0) : radius_; }

bool L1Ball::contains(const Point& x) const {
    if (x.size() != n_) return false;
    return l1_norm(x) <= radius_ + 1e-10;
}

Point L1Ball::sample(SplitMix64& rng) const {
    Point x(n_);
    double sum = 0.0;
    for (double& v : x) {
        v = rng.exponential(1.0);
        sum += v;
    }
    const double scale = radius_ * rng.uniform01() / sum;
    for (double& v : x) {
        v *= scale;
        if (rng.next_u64() & 1ULL) v = -v;
    }
    return x;
}

bool BirkhoffPolytope::contains(const Point& x) const {
    const std::size_t n = side_;
    if (x.size() != n * n) return false;
    for (double v : x) {
        if (v < -1e-12) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += x[i * n + j];
            col += x[j * n + i];
        }
        if (std::fabs(row - 1.0) > 1e-9 || std::fabs(col - 1.0) > 1e-9) return false;
    }
    return true;
}

Point BirkhoffPolytope::sample(SplitMix64& rng) const {
    // Convex combination of a handful of random permutation matrices.
    const std::size_t n = side_;
    const std::size_t k = 3 + static_cast<std::size_t>(rng.next_below(4));
    Point x(n * n, 0.0);
    std::vector<double> w(k);
    double wsum = 0.0;
    for (double& v : w) {
        v = rng.exponential(1.0);
        wsum += v;
    }
    std::vector<std::uint32_t> sigma(n);
    for (std::size_t s = 0; s < k; ++s) {
        std::iota(sigma.begin(), sigma.end(), 0U);
        for (std::size_t i = n; i > 1; --i) {
            std::swap(sigma[i - 1], sigma[rng.next_below(i)]);
        }
        const double weight = w[s] / wsum;
        for (std::size_t i = 0; i < n; ++i) x[i * n + sigma[i]] += weight;
    }
    return x;
}

Vertex BirkhoffPolytope::default_start() const {
    std::vector<std::uint32_t> identity(side_);
    std::iota(identity.begin(), identity.end(), 0U);
    return Vertex::permutation(std::move(identity));
}

double BirkhoffPolytope::diameter() const {
    // Two permutation matrices differing in every row: ||P - Q||_F = sqrt(2n).
    return std::sqrt(2.0 * static_cast<double>(side_));
}

}  // namespace fwopt
