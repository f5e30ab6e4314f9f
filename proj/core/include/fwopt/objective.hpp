#pragma once

#include <cstdint>
#include <stdexcept>

#include "fwopt/point.hpp"

namespace fwopt {

/// Generalized self-concordance constants carried as metadata. Diagnostics
/// consume them; the optimizers never read them.
struct GscParams {
    double M = 1.0;
    double nu = 3.0;
    bool known = false;
};

/// Cumulative oracle-call counts for one run. Monotonically nondecreasing.
struct OracleCounters {
    std::int64_t zoo = 0;  ///< function evaluations
    std::int64_t foo = 0;  ///< gradient evaluations
    std::int64_t lmo = 0;  ///< linear minimization calls
    std::int64_t dom = 0;  ///< domain membership tests
    std::int64_t hvp = 0;  ///< Hessian-vector products
};

/// Bundled value / gradient / domain / Hessian-vector oracles.
///
/// value() returns +inf exactly when in_domain() is false. gradient() and
/// hessian_vec() may only be called at in-domain points (caller contract);
/// implementations throw std::domain_error when the contract is violated.
class Objective {
public:
    virtual ~Objective() = default;

    virtual std::size_t dim() const = 0;
    virtual double value(const Point& x) const = 0;
    virtual Point gradient(const Point& x) const = 0;
    virtual bool in_domain(const Point& x) const = 0;

    virtual bool has_hessian_vec() const { return false; }
    virtual Point hessian_vec(const Point& /*x*/, const Point& /*d*/) const {
        throw std::logic_error("objective does not provide a Hessian-vector oracle");
    }

    virtual GscParams gsc_params() const { return {}; }
};

/// Wrapper that increments an OracleCounters field before delegating each call.
/// Owns its counters unless an external struct is supplied.
class CountedObjective final : public Objective {
public:
    explicit CountedObjective(const Objective& inner, OracleCounters* external = nullptr)
        : inner_(&inner), external_(external) {}

    std::size_t dim() const override { return inner_->dim(); }

    double value(const Point& x) const override {
        ++counters().zoo;
        return inner_->value(x);
    }

    Point gradient(const Point& x) const override {
        ++counters().foo;
        return inner_->gradient(x);
    }

    bool in_domain(const Point& x) const override {
        ++counters().dom;
        return inner_->in_domain(x);
    }

    bool has_hessian_vec() const override { return inner_->has_hessian_vec(); }

    Point hessian_vec(const Point& x, const Point& d) const override {
        ++counters().hvp;
        return inner_->hessian_vec(x, d);
    }

    GscParams gsc_params() const override { return inner_->gsc_params(); }

    OracleCounters& counters() const { return external_ ? *external_ : own_; }
    const Objective& inner() const { return *inner_; }

private:
    const Objective* inner_;
    OracleCounters* external_;
    mutable OracleCounters own_{};
};

inline CountedObjective counted_objective(const Objective& obj) { return CountedObjective(obj); }

}  // namespace fwopt
