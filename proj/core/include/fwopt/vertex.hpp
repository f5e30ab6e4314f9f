#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fwopt/point.hpp"

namespace fwopt {

/// Sparse extreme point of a feasible set: a scaled basis vector, the origin,
/// or a permutation matrix (stored as sigma with matrix entry (i, sigma[i]) = 1,
/// flattened row-major). An Atom carries an arbitrary dense point; away-step
/// runs use it to seed the active set when the start point is not a vertex.
class Vertex {
public:
    enum class Kind { Zero, Basis, Permutation, Atom };

    static Vertex zero() { return Vertex(Kind::Zero); }

    static Vertex basis(std::size_t index, double scale) {
        Vertex v(Kind::Basis);
        v.index_ = index;
        v.scale_ = scale;
        return v;
    }

    static Vertex permutation(std::vector<std::uint32_t> sigma) {
        Vertex v(Kind::Permutation);
        v.perm_ = std::move(sigma);
        return v;
    }

    static Vertex atom(Point coords) {
        Vertex v(Kind::Atom);
        v.coords_ = std::move(coords);
        return v;
    }

    Kind kind() const { return kind_; }
    std::size_t index() const { return index_; }
    double scale() const { return scale_; }
    const std::vector<std::uint32_t>& perm() const { return perm_; }
    const Point& atom_coords() const { return coords_; }

    /// <dense(v), g>
    double dot(const Point& g) const {
        switch (kind_) {
            case Kind::Zero:
                return 0.0;
            case Kind::Basis:
                return scale_ * g.at(index_);
            case Kind::Permutation: {
                const std::size_t n = perm_.size();
                if (g.size() != n * n) throw std::invalid_argument("permutation vertex dimension mismatch");
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += g[i * n + perm_[i]];
                return s;
            }
            case Kind::Atom:
                return inner(coords_, g);
        }
        return 0.0;
    }

    /// x += alpha * dense(v)
    void add_scaled_to(Point& x, double alpha) const {
        switch (kind_) {
            case Kind::Zero:
                return;
            case Kind::Basis:
                x.at(index_) += alpha * scale_;
                return;
            case Kind::Permutation: {
                const std::size_t n = perm_.size();
                if (x.size() != n * n) throw std::invalid_argument("permutation vertex dimension mismatch");
                for (std::size_t i = 0; i < n; ++i) x[i * n + perm_[i]] += alpha;
                return;
            }
            case Kind::Atom:
                check_same_dim(x, coords_);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * coords_[i];
                return;
        }
    }

    Point dense(std::size_t dim) const {
        Point out(dim, 0.0);
        add_scaled_to(out, 1.0);
        return out;
    }

    /// Structural equality: identical tag plus identical index/scale/permutation.
    /// Dense comparison is never used to identify duplicates.
    friend bool operator==(const Vertex& a, const Vertex& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case Kind::Zero: return true;
            case Kind::Basis: return a.index_ == b.index_ && a.scale_ == b.scale_;
            case Kind::Permutation: return a.perm_ == b.perm_;
            case Kind::Atom: return a.coords_ == b.coords_;
        }
        return false;
    }

    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }

private:
    explicit Vertex(Kind k) : kind_(k) {}

    Kind kind_;
    std::size_t index_ = 0;
    double scale_ = 0.0;
    std::vector<std::uint32_t> perm_;
    Point coords_;
};

}  // namespace fwopt
