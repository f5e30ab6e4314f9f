#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fwopt/objective.hpp"
#include "fwopt/point.hpp"

namespace fwopt {

// --- instance data -----------------------------------------------------------

/// Return matrix with strictly positive entries, p periods (rows) x n assets.
struct PortfolioInstance {
    std::size_t n = 0;
    std::size_t p = 0;
    std::vector<double> returns;  ///< p x n, row-major
};

/// Signal recovery data: nonnegative map W (n_obs x d), positive target y,
/// l1 radius of the unit-simplex feasible set.
struct KLInstance {
    std::size_t n_obs = 0;
    std::size_t d = 0;
    std::vector<double> w;  ///< n_obs x d, row-major
    std::vector<double> y;  ///< length n_obs, entrywise positive
    double radius = 1.0;
    Point signal;  ///< generating sparse input, kept for reference checks
};

/// Elastic-net logistic regression data over the l1 ball of radius rho.
struct LogisticInstance {
    std::size_t n_samples = 0;
    std::size_t n = 0;
    std::vector<double> a;       ///< n_samples x n, row-major
    std::vector<double> labels;  ///< in {-1, +1}
    double l2_reg = 0.0;         ///< mu
    double radius = 1.0;         ///< rho
};

/// x'Qx + <b,x> - mu * sum_i log(x_i) with Q symmetric positive definite.
struct BarrierQuadraticInstance {
    std::size_t n = 0;
    std::vector<double> q;  ///< n x n, row-major, symmetric
    std::vector<double> b;
    double barrier_weight = 1.0;  ///< mu > 0
};

// --- objectives --------------------------------------------------------------

/// f(x) = -sum_t log(<r_t, x>) over the probability simplex.
class PortfolioObjective final : public Objective {
public:
    explicit PortfolioObjective(PortfolioInstance inst);
    std::size_t dim() const override { return inst_.n; }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    bool in_domain(const Point& x) const override;
    bool has_hessian_vec() const override { return true; }
    Point hessian_vec(const Point& x, const Point& d) const override;
    GscParams gsc_params() const override { return {2.0, 3.0, true}; }
    const PortfolioInstance& instance() const { return inst_; }

private:
    void matvec(const Point& x, std::vector<double>& out) const;
    PortfolioInstance inst_;
};

/// Kullback I-divergence f(x) = sum_i { u_i log(u_i / y_i) - u_i + y_i }, u = Wx.
class KLObjective final : public Objective {
public:
    explicit KLObjective(KLInstance inst);
    std::size_t dim() const override { return inst_.d; }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    bool in_domain(const Point& x) const override;
    bool has_hessian_vec() const override { return true; }
    Point hessian_vec(const Point& x, const Point& d) const override;
    /// Not established by the usual composition rules; constants are nominal.
    GscParams gsc_params() const override { return {1.0, 4.0, false}; }
    const KLInstance& instance() const { return inst_; }

private:
    void matvec(const Point& x, std::vector<double>& out) const;
    KLInstance inst_;
};

/// f(x) = 1/N sum_i log(1 + exp(-y_i <x, a_i>)) + mu/2 ||x||^2, dom f = R^n.
class LogisticObjective final : public Objective {
public:
    explicit LogisticObjective(LogisticInstance inst);
    std::size_t dim() const override { return inst_.n; }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    bool in_domain(const Point&) const override { return true; }
    bool has_hessian_vec() const override { return true; }
    Point hessian_vec(const Point& x, const Point& d) const override;
    GscParams gsc_params() const override { return {max_row_norm_, 2.0, true}; }
    const LogisticInstance& instance() const { return inst_; }

private:
    LogisticInstance inst_;
    double max_row_norm_ = 1.0;
};

/// x'Qx + <b,x> - mu*sum log(x_i) over the positive orthant interior.
class BarrierQuadraticObjective final : public Objective {
public:
    explicit BarrierQuadraticObjective(BarrierQuadraticInstance inst);
    std::size_t dim() const override { return inst_.n; }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    bool in_domain(const Point& x) const override;
    bool has_hessian_vec() const override { return true; }
    Point hessian_vec(const Point& x, const Point& d) const override;
    GscParams gsc_params() const override;
    const BarrierQuadraticInstance& instance() const { return inst_; }

private:
    BarrierQuadraticInstance inst_;
};

/// base(x) + reg/2 * ||x||^2, same domain as the base objective.
/// The Birkhoff study uses it to add quadratic regularization to a log-loss.
class QuadRegularizedObjective final : public Objective {
public:
    QuadRegularizedObjective(std::shared_ptr<const Objective> base, double reg)
        : base_(std::move(base)), reg_(reg) {}
    std::size_t dim() const override { return base_->dim(); }
    double value(const Point& x) const override;
    Point gradient(const Point& x) const override;
    bool in_domain(const Point& x) const override { return base_->in_domain(x); }
    bool has_hessian_vec() const override { return base_->has_hessian_vec(); }
    Point hessian_vec(const Point& x, const Point& d) const override;
    GscParams gsc_params() const override {
        GscParams p = base_->gsc_params();
        p.known = false;
        return p;
    }

private:
    std::shared_ptr<const Objective> base_;
    double reg_;
};

PortfolioObjective portfolio_objective(PortfolioInstance inst);
KLObjective kl_objective(KLInstance inst);
LogisticObjective logistic_objective(LogisticInstance inst);
BarrierQuadraticObjective barrier_quadratic_objective(BarrierQuadraticInstance inst);

/// I-divergence between positive vectors with the 0*log 0 = 0 boundary
/// convention. Diagnostics only; KLObjective::value is +inf off the open domain.
double kl_divergence(const std::vector<double>& u, const std::vector<double>& y);

// --- synthetic instance generators (deterministic given seed) -----------------

enum class ReturnsDistribution { Uniform, Normal, LogNormal };

/// Entries strictly positive (clamped at 1e-3) so the simplex sits inside dom f.
/// LogNormal uses (mu=0, sigma=0.5).
PortfolioInstance generate_portfolio(std::size_t n, std::size_t p, ReturnsDistribution dist,
                                     std::uint64_t seed);

/// Sparse input with floor(sparsity*d) Exp(1) nonzeros, W from |N(0, 5^2)|,
/// y = W x0 + noise clipped to >= 1e-6; noise stddev = noise_frac * stddev(W x0).
/// The feasible-set radius defaults to ||x0||_1.
KLInstance generate_kl(std::size_t n_obs, std::size_t d, double sparsity, double noise_frac,
                       std::uint64_t seed);

/// Gaussian design, labels from a noisy linear teacher, exactly +-1.
LogisticInstance generate_logistic(std::size_t n_samples, std::size_t n, double l2_reg,
                                   double radius, std::uint64_t seed);

/// Q = V diag(lambda) V' with log-normal eigenvalues exp(eig_sigma * N(0,1))
/// and a random orthogonal V; b standard normal.
BarrierQuadraticInstance generate_barrier_quadratic(std::size_t n, double barrier_weight,
                                                    double eig_sigma, std::uint64_t seed);

}  // namespace fwopt
