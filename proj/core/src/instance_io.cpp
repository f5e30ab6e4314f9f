#include "fwopt/instance_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fwopt {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix(std::ostream& os, const std::vector<double>& m, std::size_t rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (j) os << ' ';
            os << fmt(m[i * cols + j]);
        }
        os << '\n';
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write instance file: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read instance file: " + path);
    return is;
}

void expect_kind(std::istream& is, const std::string& want) {
    std::string kind;
    int version = 0;
    is >> kind >> version;
    if (kind != want) throw std::runtime_error("instance file is '" + kind + "', expected '" + want + "'");
    if (version != 1) throw std::runtime_error("unsupported instance file version");
}

void read_values(std::istream& is, std::vector<double>& out, std::size_t count, const char* what) {
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(is >> out[i])) throw std::runtime_error(std::string("truncated instance file while reading ") + what);
    }
}

}  // namespace

void save_instance(const std::string& path, const PortfolioInstance& inst, std::uint64_t seed) {
    auto os = open_out(path);
    os << "portfolio 1 " << inst.n << ' ' << inst.p << ' ' << seed << '\n';
    write_matrix(os, inst.returns, inst.p, inst.n);
}

void save_instance(const std::string& path, const KLInstance& inst, std::uint64_t seed) {
    auto os = open_out(path);
    os << "kl 1 " << inst.n_obs << ' ' << inst.d << ' ' << seed << ' ' << fmt(inst.radius) << '\n';
    write_matrix(os, inst.w, inst.n_obs, inst.d);
    write_matrix(os, inst.y, 1, inst.n_obs);
    write_matrix(os, inst.signal, 1, inst.d);
}

void save_instance(const std::string& path, const LogisticInstance& inst, std::uint64_t seed) {
    auto os = open_out(path);
    os << "logistic 1 " << inst.n_samples << ' ' << inst.n << ' ' << seed << ' ' << fmt(inst.l2_reg)
       << ' ' << fmt(inst.radius) << '\n';
    write_matrix(os, inst.a, inst.n_samples, inst.n);
    write_matrix(os, inst.labels, 1, inst.n_samples);
}

void save_instance(const std::string& path, const BarrierQuadraticInstance& inst, std::uint64_t seed) {
    auto os = open_out(path);
    os << "barrier_quadratic 1 " << inst.n << ' ' << seed << ' ' << fmt(inst.barrier_weight) << '\n';
    write_matrix(os, inst.q, inst.n, inst.n);
    write_matrix(os, inst.b, 1, inst.n);
}

PortfolioInstance load_portfolio_instance(const std::string& path) {
    auto is = open_in(path);
    expect_kind(is, "portfolio");
    PortfolioInstance inst;
    std::uint64_t seed = 0;
    is >> inst.n >> inst.p >> seed;
    read_values(is, inst.returns, inst.n * inst.p, "returns");
    return inst;
}

KLInstance load_kl_instance(const std::string& path) {
    auto is = open_in(path);
    expect_kind(is, "kl");
    KLInstance inst;
    std::uint64_t seed = 0;
    is >> inst.n_obs >> inst.d >> seed >> inst.radius;
    read_values(is, inst.w, inst.n_obs * inst.d, "W");
    read_values(is, inst.y, inst.n_obs, "y");
    std::vector<double> sig;
    read_values(is, sig, inst.d, "signal");
    inst.signal = std::move(sig);
    return inst;
}

LogisticInstance load_logistic_instance(const std::string& path) {
    auto is = open_in(path);
    expect_kind(is, "logistic");
    LogisticInstance inst;
    std::uint64_t seed = 0;
    is >> inst.n_samples >> inst.n >> seed >> inst.l2_reg >> inst.radius;
    read_values(is, inst.a, inst.n_samples * inst.n, "design matrix");
    read_values(is, inst.labels, inst.n_samples, "labels");
    return inst;
}

BarrierQuadraticInstance load_barrier_quadratic_instance(const std::string& path) {
    auto is = open_in(path);
    expect_kind(is, "barrier_quadratic");
    BarrierQuadraticInstance inst;
    std::uint64_t seed = 0;
    is >> inst.n >> seed >> inst.barrier_weight;
    read_values(is, inst.q, inst.n * inst.n, "Q");
    read_values(is, inst.b, inst.n, "b");
    return inst;
}

std::string peek_instance_kind(const std::string& path) {
    auto is = open_in(path);
    std::string kind;
    is >> kind;
    return kind;
}

}  // namespace fwopt
