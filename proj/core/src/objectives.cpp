#include "fwopt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fwopt/rng.hpp"

namespace fwopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const Point& x, std::size_t n, const char* what) {
    if (x.size() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

[[noreturn]] void outside_domain(const char* what) {
    throw std::domain_error(std::string(what) + " called outside dom f");
}

/// log(1 + exp(m)) without overflow for large |m|.
double softplus(double m) {
    if (m > 0.0) return m + std::log1p(std::exp(-m));
    return std::log1p(std::exp(m));
}

/// logistic sigmoid, evaluated on the stable side.
double sigmoid(double m) {
    if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
    const double e = std::exp(m);
    return e / (1.0 + e);
}

}  // namespace

// --- portfolio ----------------------------------------------------------------

PortfolioObjective::PortfolioObjective(PortfolioInstance inst) : inst_(std::move(inst)) {
    if (inst_.returns.size() != inst_.n * inst_.p) {
        throw std::invalid_argument("portfolio: returns matrix size mismatch");
    }
    for (double r : inst_.returns) {
        if (!(r > 0.0)) throw std::invalid_argument("portfolio: returns must be strictly positive");
    }
}

void PortfolioObjective::matvec(const Point& x, std::vector<double>& out) const {
    out.resize(inst_.p);
    const double* row = inst_.returns.data();
    for (std::size_t t = 0; t < inst_.p; ++t, row += inst_.n) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst_.n; ++j) s += row[j] * x[j];
        out[t] = s;
    }
}

double PortfolioObjective::value(const Point& x) const {
    require_dim(x, inst_.n, "portfolio value");
    std::vector<double> u;
    matvec(x, u);
    double f = 0.0;
    for (double ut : u) {
        if (!(ut > 0.0)) return kInf;
        f -= std::log(ut);
    }
    return f;
}

bool PortfolioObjective::in_domain(const Point& x) const {
    require_dim(x, inst_.n, "portfolio in_domain");
    std::vector<double> u;
    matvec(x, u);
    for (double ut : u) {
        if (!(ut > 0.0)) return false;
    }
    return true;
}

Point PortfolioObjective::gradient(const Point& x) const {
    require_dim(x, inst_.n, "portfolio gradient");
    std::vector<double> u;
    matvec(x, u);
    Point g(inst_.n, 0.0);
    const double* row = inst_.returns.data();
    for (std::size_t t = 0; t < inst_.p; ++t, row += inst_.n) {
        if (!(u[t] > 0.0)) outside_domain("portfolio gradient");
        const double c = -1.0 / u[t];
        for (std::size_t j = 0; j < inst_.n; ++j) g[j] += c * row[j];
    }
    return g;
}

Point PortfolioObjective::hessian_vec(const Point& x, const Point& d) const {
    require_dim(x, inst_.n, "portfolio hessian_vec");
    require_dim(d, inst_.n, "portfolio hessian_vec");
    std::vector<double> u, w;
    matvec(x, u);
    matvec(d, w);
    Point out(inst_.n, 0.0);
    const double* row = inst_.returns.data();
    for (std::size_t t = 0; t < inst_.p; ++t, row += inst_.n) {
        if (!(u[t] > 0.0)) outside_domain("portfolio hessian_vec");
        const double c = w[t] / (u[t] * u[t]);
        for (std::size_t j = 0; j < inst_.n; ++j) out[j] += c * row[j];
    }
    return out;
}

// --- KL divergence -------------------------------------------------------------

KLObjective::KLObjective(KLInstance inst) : inst_(std::move(inst)) {
    if (inst_.w.size() != inst_.n_obs * inst_.d) throw std::invalid_argument("kl: W size mismatch");
    if (inst_.y.size() != inst_.n_obs) throw std::invalid_argument("kl: y size mismatch");
    for (double yi : inst_.y) {
        if (!(yi > 0.0)) throw std::invalid_argument("kl: y must be entrywise positive");
    }
    for (std::size_t i = 0; i < inst_.n_obs; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < inst_.d; ++j) {
            const double wij = inst_.w[i * inst_.d + j];
            if (wij < 0.0) throw std::invalid_argument("kl: W must be nonnegative");
            row_sum += wij;
        }
        if (row_sum == 0.0) throw std::invalid_argument("kl: W has an all-zero row");
    }
}

void KLObjective::matvec(const Point& x, std::vector<double>& out) const {
    out.resize(inst_.n_obs);
    const double* row = inst_.w.data();
    for (std::size_t i = 0; i < inst_.n_obs; ++i, row += inst_.d) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst_.d; ++j) s += row[j] * x[j];
        out[i] = s;
    }
}

double KLObjective::value(const Point& x) const {
    require_dim(x, inst_.d, "kl value");
    std::vector<double> u;
    matvec(x, u);
    double f = 0.0;
    for (std::size_t i = 0; i < inst_.n_obs; ++i) {
        if (!(u[i] > 0.0)) return kInf;
        f += u[i] * std::log(u[i] / inst_.y[i]) - u[i] + inst_.y[i];
    }
    return f;
}

bool KLObjective::in_domain(const Point& x) const {
    require_dim(x, inst_.d, "kl in_domain");
    std::vector<double> u;
    matvec(x, u);
    for (double ui : u) {
        if (!(ui > 0.0)) return false;
    }
    return true;
}

Point KLObjective::gradient(const Point& x) const {
    require_dim(x, inst_.d, "kl gradient");
    std::vector<double> u;
    matvec(x, u);
    Point g(inst_.d, 0.0);
    const double* row = inst_.w.data();
    for (std::size_t i = 0; i < inst_.n_obs; ++i, row += inst_.d) {
        if (!(u[i] > 0.0)) outside_domain("kl gradient");
        const double c = std::log(u[i] / inst_.y[i]);
        for (std::size_t j = 0; j < inst_.d; ++j) g[j] += c * row[j];
    }
    return g;
}

Point KLObjective::hessian_vec(const Point& x, const Point& d) const {
    require_dim(x, inst_.d, "kl hessian_vec");
    require_dim(d, inst_.d, "kl hessian_vec");
    std::vector<double> u, w;
    matvec(x, u);
    matvec(d, w);
    Point out(inst_.d, 0.0);
    const double* row = inst_.w.data();
    for (std::size_t i = 0; i < inst_.n_obs; ++i, row += inst_.d) {
        if (!(u[i] > 0.0)) outside_domain("kl hessian_vec");
        const double c = w[i] / u[i];
        for (std::size_t j = 0; j < inst_.d; ++j) out[j] += c * row[j];
    }
    return out;
}

double kl_divergence(const std::vector<double>& u, const std::vector<double>& y) {
    if (u.size() != y.size()) throw std::invalid_argument("kl_divergence: size mismatch");
    double f = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0 || !(y[i] > 0.0)) return kInf;
        if (u[i] > 0.0) f += u[i] * std::log(u[i] / y[i]);
        f += y[i] - u[i];
    }
    return f;
}

// --- logistic -------------------------------------------------------------------

LogisticObjective::LogisticObjective(LogisticInstance inst) : inst_(std::move(inst)) {
    if (inst_.a.size() != inst_.n_samples * inst_.n) {
        throw std::invalid_argument("logistic: design matrix size mismatch");
    }
    if (inst_.labels.size() != inst_.n_samples) throw std::invalid_argument("logistic: label size mismatch");
    for (double yi : inst_.labels) {
        if (yi != 1.0 && yi != -1.0) throw std::invalid_argument("logistic: labels must be exactly +-1");
    }
    max_row_norm_ = 0.0;
    for (std::size_t i = 0; i < inst_.n_samples; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst_.n; ++j) {
            const double aij = inst_.a[i * inst_.n + j];
            s += aij * aij;
        }
        max_row_norm_ = std::max(max_row_norm_, std::sqrt(s));
    }
    if (max_row_norm_ == 0.0) max_row_norm_ = 1.0;
}

double LogisticObjective::value(const Point& x) const {
    require_dim(x, inst_.n, "logistic value");
    double f = 0.0;
    const double* row = inst_.a.data();
    for (std::size_t i = 0; i < inst_.n_samples; ++i, row += inst_.n) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst_.n; ++j) s += row[j] * x[j];
        f += softplus(-inst_.labels[i] * s);
    }
    f /= static_cast<double>(inst_.n_samples);
    if (inst_.l2_reg > 0.0) {
        double sq = 0.0;
        for (double xi : x) sq += xi * xi;
        f += 0.5 * inst_.l2_reg * sq;
    }
    return f;
}

Point LogisticObjective::gradient(const Point& x) const {
    require_dim(x, inst_.n, "logistic gradient");
    Point g(inst_.n, 0.0);
    const double invn = 1.0 / static_cast<double>(inst_.n_samples);
    const double* row = inst_.a.data();
    for (std::size_t i = 0; i < inst_.n_samples; ++i, row += inst_.n) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst_.n; ++j) s += row[j] * x[j];
        const double yi = inst_.labels[i];
        const double c = -yi * sigmoid(-yi * s) * invn;
        for (std::size_t j = 0; j < inst_.n; ++j) g[j] += c * row[j];
    }
    if (inst_.l2_reg > 0.0) {
        for (std::size_t j = 0; j < inst_.n; ++j) g[j] += inst_.l2_reg * x[j];
    }
    return g;
}

Point LogisticObjective::hessian_vec(const Point& x, const Point& d) const {
    require_dim(x, inst_.n, "logistic hessian_vec");
    require_dim(d, inst_.n, "logistic hessian_vec");
    Point out(inst_.n, 0.0);
    const double invn = 1.0 / static_cast<double>(inst_.n_samples);
    const double* row = inst_.a.data();
    for (std::size_t i = 0; i < inst_.n_samples; ++i, row += inst_.n) {
        double s = 0.0, ad = 0.0;
        for (std::size_t j = 0; j < inst_.n; ++j) {
            s += row[j] * x[j];
            ad += row[j] * d[j];
        }
        const double sig = sigmoid(-inst_.labels[i] * s);
        const double c = sig * (1.0 - sig) * ad * invn;
        for (std::size_t j = 0; j < inst_.n; ++j) out[j] += c * row[j];
    }
    if (inst_.l2_reg > 0.0) {
        for (std::size_t j = 0; j < inst_.n; ++j) out[j] += inst_.l2_reg * d[j];
    }
    return out;
}

// --- barrier quadratic ----------------------------------------------------------

BarrierQuadraticObjective::BarrierQuadraticObjective(BarrierQuadraticInstance inst)
    : inst_(std::move(inst)) {
    const std::size_t n = inst_.n;
    if (inst_.q.size() != n * n) throw std::invalid_argument("barrier: Q size mismatch");
    if (inst_.b.size() != n) throw std::invalid_argument("barrier: b size mismatch");
    if (!(inst_.barrier_weight > 0.0)) throw std::invalid_argument("barrier: mu must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(inst_.q[i * n + j] - inst_.q[j * n + i]) > 1e-10) {
                throw std::invalid_argument("barrier: Q not symmetric");
            }
        }
    }
}

double BarrierQuadraticObjective::value(const Point& x) const {
    const std::size_t n = inst_.n;
    require_dim(x, n, "barrier value");
    double barrier = 0.0;
    for (double xi : x) {
        if (!(xi > 0.0)) return kInf;
        barrier -= std::log(xi);
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += inst_.q[i * n + j] * x[j];
        quad += x[i] * s;
    }
    return quad + inner(x, inst_.b) + inst_.barrier_weight * barrier;
}

bool BarrierQuadraticObjective::in_domain(const Point& x) const {
    require_dim(x, inst_.n, "barrier in_domain");
    for (double xi : x) {
        if (!(xi > 0.0)) return false;
    }
    return true;
}

Point BarrierQuadraticObjective::gradient(const Point& x) const {
    const std::size_t n = inst_.n;
    require_dim(x, n, "barrier gradient");
    Point g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) outside_domain("barrier gradient");
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += inst_.q[i * n + j] * x[j];
        g[i] = 2.0 * s + inst_.b[i] - inst_.barrier_weight / x[i];
    }
    return g;
}

Point BarrierQuadraticObjective::hessian_vec(const Point& x, const Point& d) const {
    const std::size_t n = inst_.n;
    require_dim(x, n, "barrier hessian_vec");
    require_dim(d, n, "barrier hessian_vec");
    Point out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) outside_domain("barrier hessian_vec");
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += inst_.q[i * n + j] * d[j];
        out[i] = 2.0 * s + inst_.barrier_weight * d[i] / (x[i] * x[i]);
    }
    return out;
}

GscParams BarrierQuadraticObjective::gsc_params() const {
    // -log is (2,3); scaling by mu rescales M by 1/sqrt(mu); the quadratic term
    // contributes no third derivative.
    return {2.0 / std::sqrt(inst_.barrier_weight), 3.0, true};
}

// --- quadratic regularization wrapper --------------------------------------------

double QuadRegularizedObjective::value(const Point& x) const {
    const double base = base_->value(x);
    if (!std::isfinite(base)) return base;
    double sq = 0.0;
    for (double xi : x) sq += xi * xi;
    return base + 0.5 * reg_ * sq;
}

Point QuadRegularizedObjective::gradient(const Point& x) const {
    Point g = base_->gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += reg_ * x[i];
    return g;
}

Point QuadRegularizedObjective::hessian_vec(const Point& x, const Point& d) const {
    Point out = base_->hessian_vec(x, d);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += reg_ * d[i];
    return out;
}

// --- factories -------------------------------------------------------------------

PortfolioObjective portfolio_objective(PortfolioInstance inst) {
    return PortfolioObjective(std::move(inst));
}
KLObjective kl_objective(KLInstance inst) { return KLObjective(std::move(inst)); }
LogisticObjective logistic_objective(LogisticInstance inst) {
    return LogisticObjective(std::move(inst));
}
BarrierQuadraticObjective barrier_quadratic_objective(BarrierQuadraticInstance inst) {
    return BarrierQuadraticObjective(std::move(inst));
}

// --- generators ------------------------------------------------------------------

PortfolioInstance generate_portfolio(std::size_t n, std::size_t p, ReturnsDistribution dist,
                                     std::uint64_t seed) {
    if (n < 1 || p < 1) throw std::invalid_argument("generate_portfolio: n, p must be >= 1");
    SplitMix64 rng(seed);
    PortfolioInstance inst;
    inst.n = n;
    inst.p = p;
    inst.returns.resize(n * p);
    for (double& r : inst.returns) {
        switch (dist) {
            case ReturnsDistribution::Uniform: r = rng.uniform01(); break;
            case ReturnsDistribution::Normal: r = std::fabs(rng.normal()); break;
            case ReturnsDistribution::LogNormal: r = rng.lognormal(0.0, 0.5); break;
        }
        r = std::max(r, 1e-3);
    }
    return inst;
}

KLInstance generate_kl(std::size_t n_obs, std::size_t d, double sparsity, double noise_frac,
                       std::uint64_t seed) {
    if (n_obs < 1 || d < 1) throw std::invalid_argument("generate_kl: N, d must be >= 1");
    if (sparsity < 0.0 || sparsity > 1.0) throw std::invalid_argument("generate_kl: sparsity in [0,1]");
    SplitMix64 rng(seed);
    KLInstance inst;
    inst.n_obs = n_obs;
    inst.d = d;

    // sparse input signal
    inst.signal.assign(d, 0.0);
    const std::size_t nnz = static_cast<std::size_t>(sparsity * static_cast<double>(d));
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = d; i > 1; --i) std::swap(idx[i - 1], idx[rng.next_below(i)]);
    for (std::size_t k = 0; k < nnz; ++k) inst.signal[idx[k]] = rng.exponential(1.0);

    inst.w.resize(n_obs * d);
    for (double& wij : inst.w) wij = std::fabs(rng.normal(0.0, 5.0));

    std::vector<double> u(n_obs, 0.0);
    for (std::size_t i = 0; i < n_obs; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += inst.w[i * d + j] * inst.signal[j];
        u[i] = s;
    }
    double mean = 0.0;
    for (double ui : u) mean += ui;
    mean /= static_cast<double>(n_obs);
    double var = 0.0;
    for (double ui : u) var += (ui - mean) * (ui - mean);
    const double sd = std::sqrt(var / static_cast<double>(n_obs));

    inst.y.resize(n_obs);
    for (std::size_t i = 0; i < n_obs; ++i) {
        double yi = u[i];
        if (noise_frac > 0.0) yi += rng.normal(0.0, noise_frac * sd);
        inst.y[i] = std::max(yi, 1e-6);
    }
    inst.radius = l1_norm(inst.signal);
    if (inst.radius <= 0.0) inst.radius = 1.0;
    return inst;
}

LogisticInstance generate_logistic(std::size_t n_samples, std::size_t n, double l2_reg,
                                   double radius, std::uint64_t seed) {
    if (n_samples < 1 || n < 1) throw std::invalid_argument("generate_logistic: sizes must be >= 1");
    SplitMix64 rng(seed);
    LogisticInstance inst;
    inst.n_samples = n_samples;
    inst.n = n;
    inst.l2_reg = l2_reg;
    inst.radius = radius;
    inst.a.resize(n_samples * n);
    for (double& aij : inst.a) aij = rng.normal();

    std::vector<double> teacher(n);
    for (double& wj : teacher) wj = rng.normal();
    const double tn = std::sqrt(std::inner_product(teacher.begin(), teacher.end(), teacher.begin(), 0.0));

    inst.labels.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += inst.a[i * n + j] * teacher[j];
        const double margin = s / tn + 0.5 * rng.normal();
        inst.labels[i] = margin >= 0.0 ? 1.0 : -1.0;
    }
    return inst;
}

BarrierQuadraticInstance generate_barrier_quadratic(std::size_t n, double barrier_weight,
                                                    double eig_sigma, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_barrier_quadratic: n must be >= 1");
    if (!(barrier_weight > 0.0)) throw std::invalid_argument("generate_barrier_quadratic: mu > 0");
    SplitMix64 rng(seed);

    std::vector<double> eig(n);
    for (double& l : eig) l = std::exp(eig_sigma * rng.normal());

    // random orthogonal basis: Gaussian matrix, modified Gram-Schmidt by rows
    std::vector<double> v(n * n);
    for (double& e : v) e = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
        double* vi = v.data() + i * n;
        for (std::size_t k = 0; k < i; ++k) {
            const double* vk = v.data() + k * n;
            double proj = 0.0;
            for (std::size_t j = 0; j < n; ++j) proj += vi[j] * vk[j];
            for (std::size_t j = 0; j < n; ++j) vi[j] -= proj * vk[j];
        }
        double nrm = 0.0;
        for (std::size_t j = 0; j < n; ++j) nrm += vi[j] * vi[j];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {
            // degenerate draw; restart the row from a fresh basis vector
            for (std::size_t j = 0; j < n; ++j) vi[j] = (j == i) ? 1.0 : 0.0;
            nrm = 1.0;
        }
        for (std::size_t j = 0; j < n; ++j) vi[j] /= nrm;
    }

    BarrierQuadraticInstance inst;
    inst.n = n;
    inst.barrier_weight = barrier_weight;
    inst.q.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* vk = v.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = eig[k] * vk[i];
            for (std::size_t j = 0; j < n; ++j) inst.q[i * n + j] += c * vk[j];
        }
    }
    // enforce exact symmetry against accumulation order
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (inst.q[i * n + j] + inst.q[j * n + i]);
            inst.q[i * n + j] = avg;
            inst.q[j * n + i] = avg;
        }
    }
    inst.b.resize(n);
    for (double& bi : inst.b) bi = rng.normal();
    return inst;
}

}  // namespace fwopt
