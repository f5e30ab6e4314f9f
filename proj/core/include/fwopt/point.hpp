#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwopt {

/// Dense iterate. Birkhoff problems store the n x n matrix flat in row-major order.
using Point = std::vector<double>;

inline void check_same_dim(const Point& x, const Point& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()));
    }
}

inline double inner(const Point& x, const Point& y) {
    check_same_dim(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double euclidean_norm(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double l1_norm(const Point& x) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
}

/// x + gamma * d, allocated fresh.
inline Point axpy(const Point& x, double gamma, const Point& d) {
    check_same_dim(x, d);
    Point out(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += gamma * d[i];
    return out;
}

/// out = x + gamma * d; out may alias x but not d.
inline void axpy_into(Point& out, const Point& x, double gamma, const Point& d) {
    check_same_dim(x, d);
    out.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + gamma * d[i];
}

inline void scale_inplace(Point& x, double s) {
    for (double& v : x) v *= s;
}

inline bool all_finite(const Point& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace fwopt
