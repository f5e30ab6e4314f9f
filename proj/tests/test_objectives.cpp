#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "fwopt/diagnostics.hpp"
#include "fwopt/objectives.hpp"
#include "fwopt/rng.hpp"
#include "support/test_util.hpp"

using namespace fwopt;

namespace {

/// Central-difference check of hessian_vec against the analytic gradient.
double hvp_fd_error(const Objective& obj, const Point& x, const Point& d) {
    const double h = 1e-6 * (1.0 + euclidean_norm(x)) / (1.0 + euclidean_norm(d));
    const Point xp = axpy(x, h, d);
    const Point xm = axpy(x, -h, d);
    REQUIRE(obj.in_domain(xp));
    REQUIRE(obj.in_domain(xm));
    const Point gp = obj.gradient(xp);
    const Point gm = obj.gradient(xm);
    const Point hv = obj.hessian_vec(x, d);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fd = (gp[i] - gm[i]) / (2.0 * h);
        if (std::fabs(hv[i]) > 1e-8) {
            worst = std::max(worst, std::fabs(fd - hv[i]) / std::fabs(hv[i]));
        }
    }
    return worst;
}

Point random_simplex_point(SplitMix64& rng, std::size_t n) {
    Point x(n);
    double s = 0.0;
    for (double& v : x) {
        v = rng.exponential(1.0);
        s += v;
    }
    for (double& v : x) v /= s;
    return x;
}

}  // namespace

TEST_CASE("portfolio objective formulas") {
    PortfolioInstance inst;
    inst.n = 2;
    inst.p = 1;
    inst.returns = {1.0, 1.0};
    const PortfolioObjective obj(inst);

    SUBCASE("value and gradient at the uniform point") {
        const Point x{0.5, 0.5};
        CHECK(obj.value(x) == doctest::Approx(0.0));
        const Point g = obj.gradient(x);
        CHECK(g[0] == doctest::Approx(-1.0));
        CHECK(g[1] == doctest::Approx(-1.0));
    }
    SUBCASE("negative inner product leaves the domain") {
        const Point x{-0.5, 0.2};
        CHECK_FALSE(obj.in_domain(x));
        CHECK(obj.value(x) == std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(obj.gradient(x), std::domain_error);
    }
}

TEST_CASE("portfolio hessian_vec matches finite differences") {
    const auto inst = generate_portfolio(3, 5, ReturnsDistribution::Uniform, 21);
    const PortfolioObjective obj(inst);
    SplitMix64 rng(99);
    const Point x = random_simplex_point(rng, 3);
    Point d(3);
    for (double& v : d) v = rng.normal();
    CHECK(hvp_fd_error(obj, x, d) <= 1e-5);
}

TEST_CASE("kl objective formulas") {
    SUBCASE("divergence of identical signals is zero") {
        auto inst = generate_kl(6, 5, 0.4, 0.0, 17);
        const KLObjective obj(inst);
        CHECK(obj.value(inst.signal) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("single-row closed form") {
        KLInstance inst;
        inst.n_obs = 1;
        inst.d = 2;
        inst.w = {1.0, 0.0};
        inst.y = {1.0};
        inst.radius = 10.0;
        const KLObjective obj(inst);
        const double e = std::exp(1.0);
        // <w,x> = e: value = e*log(e) - e + 1 = 1
        CHECK(obj.value({e, 0.0}) == doctest::Approx(1.0));
    }
    SUBCASE("gradient matches finite differences") {
        auto inst = generate_kl(4, 3, 0.9, 0.2, 5);
        const KLObjective obj(inst);
        Point x{0.3, 0.5, 0.2};
        REQUIRE(obj.in_domain(x));
        CHECK(fd_gradient_audit(obj, x) <= 1e-5);
    }
    SUBCASE("boundary helper uses the 0 log 0 convention") {
        CHECK(kl_divergence({0.0, 2.0}, {1.0, 2.0}) == doctest::Approx(1.0));
    }
}

TEST_CASE("logistic objective formulas") {
    SUBCASE("x = 0 gives log 2 regardless of data") {
        const auto inst = generate_logistic(10, 5, 0.0, 5.0, 3);
        const LogisticObjective obj(inst);
        CHECK(obj.value(Point(5, 0.0)) == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("large margins hit the overflow-safe branch") {
        LogisticInstance inst;
        inst.n_samples = 1;
        inst.n = 2;
        inst.a = {1.0, 0.0};
        inst.labels = {1.0};
        inst.l2_reg = 0.0;
        inst.radius = 50.0;
        const LogisticObjective obj(inst);
        double prev = std::numeric_limits<double>::infinity();
        for (double t : {1.0, 5.0, 15.0, 25.0, 35.0}) {
            const double v = obj.value({t, 0.0});
            CHECK(v < prev);
            CHECK(std::isfinite(v));
            prev = v;
        }
        CHECK(obj.value({35.0, 0.0}) < 1e-15);
    }
    SUBCASE("gradient matches finite differences") {
        const auto inst = generate_logistic(10, 5, 0.1, 5.0, 7);
        const LogisticObjective obj(inst);
        SplitMix64 rng(1);
        Point x(5);
        for (double& v : x) v = rng.normal();
        CHECK(fd_gradient_audit(obj, x) <= 1e-5);
    }
}

TEST_CASE("barrier quadratic objective formulas") {
    SUBCASE("identity quadratic closed form") {
        BarrierQuadraticInstance inst;
        inst.n = 2;
        inst.q = {1.0, 0.0, 0.0, 1.0};
        inst.b = {0.0, 0.0};
        inst.barrier_weight = 1.0;
        const BarrierQuadraticObjective obj(inst);
        const Point x{1.0, 1.0};
        CHECK(obj.value(x) == doctest::Approx(2.0));
        const Point g = obj.gradient(x);
        CHECK(g[0] == doctest::Approx(1.0));
        CHECK(g[1] == doctest::Approx(1.0));
    }
    SUBCASE("zero entry leaves the domain") {
        BarrierQuadraticInstance inst;
        inst.n = 2;
        inst.q = {1.0, 0.0, 0.0, 1.0};
        inst.b = {0.0, 0.0};
        inst.barrier_weight = 0.5;
        const BarrierQuadraticObjective obj(inst);
        CHECK_FALSE(obj.in_domain({1.0, 0.0}));
        CHECK(obj.value({1.0, 0.0}) == std::numeric_limits<double>::infinity());
    }
    SUBCASE("hessian_vec matches finite differences") {
        const auto inst = generate_barrier_quadratic(6, 0.7, 1.0, 13);
        const BarrierQuadraticObjective obj(inst);
        SplitMix64 rng(2);
        Point x(6);
        for (double& v : x) v = 0.2 + rng.uniform01();
        Point d(6);
        for (double& v : d) v = 0.05 * rng.normal();
        CHECK(hvp_fd_error(obj, x, d) <= 1e-5);
    }
}

TEST_CASE("generators are deterministic and respect clamps") {
    SUBCASE("portfolio determinism and positivity") {
        const auto a = generate_portfolio(3, 2, ReturnsDistribution::Uniform, 7);
        const auto b = generate_portfolio(3, 2, ReturnsDistribution::Uniform, 7);
        CHECK(a.returns == b.returns);
        for (auto dist : {ReturnsDistribution::Uniform, ReturnsDistribution::Normal,
                          ReturnsDistribution::LogNormal}) {
            const auto inst = generate_portfolio(5, 4, dist, 42);
            for (double r : inst.returns) CHECK(r >= 1e-3);
        }
    }
    SUBCASE("large log-normal instance generates quickly") {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = generate_portfolio(1000, 1000, ReturnsDistribution::LogNormal, 1);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CHECK(inst.returns.size() == 1000u * 1000u);
        CHECK(seconds < 1.0);
    }
    SUBCASE("kl nonzero count and positive target") {
        const auto inst = generate_kl(5, 10, 0.3, 0.1, 3);
        std::size_t nnz = 0;
        for (double v : inst.signal) {
            if (v != 0.0) ++nnz;
        }
        CHECK(nnz == 3);
        for (double yi : inst.y) CHECK(yi > 0.0);
    }
    SUBCASE("noise-free kl instance is exact at the signal") {
        const auto inst = generate_kl(8, 6, 0.5, 0.0, 9);
        const KLObjective obj(inst);
        CHECK(obj.value(inst.signal) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("logistic labels are exactly +-1") {
        const auto inst = generate_logistic(40, 6, 0.1, 5.0, 11);
        for (double y : inst.labels) CHECK((y == 1.0 || y == -1.0));
    }
    SUBCASE("barrier Q is symmetric positive definite") {
        const auto inst = generate_barrier_quadratic(8, 1.0, 2.0, 19);
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                CHECK(inst.q[i * 8 + j] == doctest::Approx(inst.q[j * 8 + i]).epsilon(1e-12));
            }
        }
        // positive definiteness spot check via random quadratic forms
        SplitMix64 rng(4);
        for (int k = 0; k < 20; ++k) {
            Point d(8);
            for (double& v : d) v = rng.normal();
            double quad = 0.0;
            for (std::size_t i = 0; i < 8; ++i) {
                for (std::size_t j = 0; j < 8; ++j) quad += d[i] * inst.q[i * 8 + j] * d[j];
            }
            CHECK(quad > 0.0);
        }
    }
}

TEST_CASE("gradient audits pass for every family") {
    SplitMix64 rng(55);
    SUBCASE("portfolio") {
        const PortfolioObjective obj(generate_portfolio(6, 9, ReturnsDistribution::LogNormal, 1));
        for (int k = 0; k < 5; ++k) {
            CHECK(fd_gradient_audit(obj, random_simplex_point(rng, 6)) <= 1e-5);
        }
    }
    SUBCASE("kl") {
        const KLObjective obj(generate_kl(7, 5, 0.6, 0.1, 2));
        for (int k = 0; k < 5; ++k) {
            Point x(5);
            for (double& v : x) v = 0.05 + rng.uniform01();
            CHECK(fd_gradient_audit(obj, x) <= 1e-5);
        }
    }
    SUBCASE("logistic") {
        const LogisticObjective obj(generate_logistic(12, 5, 0.05, 5.0, 3));
        for (int k = 0; k < 5; ++k) {
            Point x(5);
            for (double& v : x) v = rng.normal();
            CHECK(fd_gradient_audit(obj, x) <= 1e-5);
        }
    }
    SUBCASE("barrier quadratic") {
        const BarrierQuadraticObjective obj(generate_barrier_quadratic(5, 0.8, 1.5, 4));
        for (int k = 0; k < 5; ++k) {
            Point x(5);
            for (double& v : x) v = 0.1 + rng.uniform01();
            CHECK(fd_gradient_audit(obj, x) <= 1e-5);
        }
    }
}

TEST_CASE("hessian_vec is symmetric as a bilinear form") {
    SplitMix64 rng(77);
    const PortfolioObjective pf(generate_portfolio(5, 8, ReturnsDistribution::Normal, 6));
    const BarrierQuadraticObjective bq(generate_barrier_quadratic(5, 1.2, 1.0, 8));
    const LogisticObjective lg(generate_logistic(9, 5, 0.2, 5.0, 9));
    const KLObjective kl(generate_kl(6, 5, 0.8, 0.1, 10));

    auto check_sym = [&](const Objective& obj, const Point& x) {
        for (int k = 0; k < 10; ++k) {
            Point d(x.size()), e(x.size());
            for (double& v : d) v = rng.normal();
            for (double& v : e) v = rng.normal();
            const double lhs = inner(obj.hessian_vec(x, d), e);
            const double rhs = inner(obj.hessian_vec(x, e), d);
            CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(lhs)));
        }
    };
    check_sym(pf, random_simplex_point(rng, 5));
    Point pos(5);
    for (double& v : pos) v = 0.2 + rng.uniform01();
    check_sym(bq, pos);
    check_sym(kl, pos);
    Point any(5);
    for (double& v : any) v = rng.normal();
    check_sym(lg, any);
}

TEST_CASE("convexity spot check along in-domain segments") {
    SplitMix64 rng(31);
    const PortfolioObjective obj(generate_portfolio(6, 10, ReturnsDistribution::LogNormal, 12));
    for (int k = 0; k < 25; ++k) {
        const Point x = random_simplex_point(rng, 6);
        const Point y = random_simplex_point(rng, 6);
        const double lam = rng.uniform01();
        Point z(6);
        for (std::size_t i = 0; i < 6; ++i) z[i] = lam * x[i] + (1.0 - lam) * y[i];
        REQUIRE(obj.in_domain(z));
        const double fz = obj.value(z);
        const double bound = lam * obj.value(x) + (1.0 - lam) * obj.value(y);
        CHECK(fz <= bound + 1e-12 * (1.0 + std::fabs(bound)));
    }
}
