#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fwopt/point.hpp"
#include "fwopt/rng.hpp"
#include "fwopt/vertex.hpp"

namespace fwopt {

/// argmin over the probability simplex: the lowest-index minimizing coordinate.
Vertex lmo_probability_simplex(const Point& d);

/// argmin over {x >= 0, ||x||_1 <= radius}: radius * e_i at the most negative
/// coordinate, or the origin when every coordinate is nonnegative.
Vertex lmo_unit_simplex(const Point& d, double radius);

/// argmin over the l1 ball of the given radius: -radius * sign(d_i) * e_i at the
/// largest-magnitude coordinate (ties to the lowest index, sign(0) treated as +1).
Vertex lmo_l1_ball(const Point& d, double radius);

/// argmin over the Birkhoff polytope, cost flattened row-major n x n.
/// Exact optimum via the Hungarian algorithm.
Vertex lmo_birkhoff(const Point& cost, std::size_t n);

/// O(n^3) shortest-augmenting-path assignment solver with potentials.
/// Returns sigma with row i assigned to column sigma[i], minimizing total cost.
std::vector<std::uint32_t> solve_assignment(const Point& cost, std::size_t n);

/// A compact convex feasible set: linear minimization, membership with the
/// documented residual tolerances, and a sampler for certificate tests.
class FeasibleSet {
public:
    virtual ~FeasibleSet() = default;

    virtual std::size_t dim() const = 0;
    virtual Vertex lmo(const Point& direction) const = 0;
    virtual bool contains(const Point& x) const = 0;
    virtual Point sample(SplitMix64& rng) const = 0;
    virtual Vertex default_start() const = 0;
    virtual double diameter() const = 0;
};

class ProbabilitySimplex final : public FeasibleSet {
public:
    explicit ProbabilitySimplex(std::size_t n) : n_(n) {}
    std::size_t dim() const override { return n_; }
    Vertex lmo(const Point& d) const override { return lmo_probability_simplex(d); }
    bool contains(const Point& x) const override;
    Point sample(SplitMix64& rng) const override;
    Vertex default_start() const override { return Vertex::basis(0, 1.0); }
    double diameter() const override;

private:
    std::size_t n_;
};

class UnitSimplex final : public FeasibleSet {
public:
    UnitSimplex(std::size_t n, double radius) : n_(n), radius_(radius) {}
    std::size_t dim() const override { return n_; }
    double radius() const { return radius_; }
    Vertex lmo(const Point& d) const override { return lmo_unit_simplex(d, radius_); }
    bool contains(const Point& x) const override;
    Point sample(SplitMix64& rng) const override;
    Vertex default_start() const override { return Vertex::basis(0, radius_); }
    double diameter() const override;

private:
    std::size_t n_;
    double radius_;
};

class L1Ball final : public FeasibleSet {
public:
    L1Ball(std::size_t n, double radius) : n_(n), radius_(radius) {}
    std::size_t dim() const override { return n_; }
    double radius() const { return radius_; }
    Vertex lmo(const Point& d) const override { return lmo_l1_ball(d, radius_); }
    bool contains(const Point& x) const override;
    Point sample(SplitMix64& rng) const override;
    Vertex default_start() const override { return Vertex::basis(0, radius_); }
    double diameter() const override { return 2.0 * radius_; }

private:
    std::size_t n_;
    double radius_;
};

/// Doubly stochastic n x n matrices, ambient dimension n^2.
class BirkhoffPolytope final : public FeasibleSet {
public:
    explicit BirkhoffPolytope(std::size_t side) : side_(side) {}
    std::size_t dim() const override { return side_ * side_; }
    std::size_t side() const { return side_; }
    Vertex lmo(const Point& d) const override { return lmo_birkhoff(d, side_); }
    bool contains(const Point& x) const override;
    Point sample(SplitMix64& rng) const override;
    Vertex default_start() const override;
    double diameter() const override;

private:
    std::size_t side_;
};

}  // namespace fwopt
