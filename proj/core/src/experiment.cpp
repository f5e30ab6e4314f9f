#include "fwopt/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fwopt/diagnostics.hpp"
#include "fwopt/svg_plot.hpp"

namespace fwopt {

namespace fs = std::filesystem;

const char* kTraceCsvHeader = "iter,time_s,f_value,primal_gap,fw_gap,step_size,step_type,zoo,foo,lmo,dom";

const char* to_string(Problem p) {
    switch (p) {
        case Problem::Portfolio: return "portfolio";
        case Problem::KL: return "kl";
        case Problem::Logistic: return "logistic";
        case Problem::BarrierQuadratic: return "barrier_quadratic";
        case Problem::Birkhoff: return "birkhoff";
    }
    return "?";
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::MFW: return "mfw";
        case Algorithm::HalvingMFW: return "halving_mfw";
        case Algorithm::StatelessMFW: return "stateless_mfw";
        case Algorithm::BFW: return "bfw";
        case Algorithm::BAFW: return "bafw";
    }
    return "?";
}

Problem parse_problem(const std::string& s) {
    if (s == "portfolio") return Problem::Portfolio;
    if (s == "kl") return Problem::KL;
    if (s == "logistic") return Problem::Logistic;
    if (s == "barrier_quadratic") return Problem::BarrierQuadratic;
    if (s == "birkhoff") return Problem::Birkhoff;
    throw std::invalid_argument("unknown problem: " + s);
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "mfw") return Algorithm::MFW;
    if (s == "halving_mfw") return Algorithm::HalvingMFW;
    if (s == "stateless_mfw") return Algorithm::StatelessMFW;
    if (s == "bfw") return Algorithm::BFW;
    if (s == "bafw") return Algorithm::BAFW;
    throw std::invalid_argument("unknown algorithm: " + s);
}

ReturnsDistribution parse_distribution(const std::string& s) {
    if (s == "uniform") return ReturnsDistribution::Uniform;
    if (s == "normal") return ReturnsDistribution::Normal;
    if (s == "lognormal") return ReturnsDistribution::LogNormal;
    throw std::invalid_argument("unknown distribution: " + s);
}

// --- configuration -------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
}

std::size_t parse_size(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size() || d < 0) throw std::invalid_argument("");
        return static_cast<std::size_t>(d);
    } catch (...) {
        throw ConfigError(line, "expected a nonnegative integer, got '" + v + "'");
    }
}

std::vector<Algorithm> parse_algorithm_list(const std::string& v, int line) {
    std::vector<Algorithm> algs;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            algs.push_back(parse_algorithm(item));
        } catch (const std::exception& e) {
            throw ConfigError(line, e.what());
        }
    }
    if (algs.empty()) throw ConfigError(line, "empty algorithm list");
    return algs;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_problem = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(line_no, "expected 'key = value'");

        if (key == "problem") {
            try {
                cfg.problem = parse_problem(value);
            } catch (const std::exception& e) {
                throw ConfigError(line_no, e.what());
            }
            have_problem = true;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_size(value, line_no));
        } else if (key == "algorithms") {
            cfg.algorithms = parse_algorithm_list(value, line_no);
        } else if (key == "dim") {
            cfg.dim = parse_size(value, line_no);
        } else if (key == "samples") {
            cfg.samples = parse_size(value, line_no);
        } else if (key == "dist") {
            try {
                cfg.dist = parse_distribution(value);
            } catch (const std::exception& e) {
                throw ConfigError(line_no, e.what());
            }
        } else if (key == "sparsity") {
            cfg.sparsity = parse_double(value, line_no);
        } else if (key == "noise_frac") {
            cfg.noise_frac = parse_double(value, line_no);
        } else if (key == "radius") {
            cfg.radius = parse_double(value, line_no);
        } else if (key == "mu") {
            cfg.mu = parse_double(value, line_no);
        } else if (key == "eig_sigma") {
            cfg.eig_sigma = parse_double(value, line_no);
        } else if (key == "max_iter") {
            cfg.stop.max_iter = parse_size(value, line_no);
        } else if (key == "fw_gap_tol") {
            cfg.stop.fw_gap_tol = parse_double(value, line_no);
        } else if (key == "time_limit_s") {
            cfg.stop.time_limit_s = parse_double(value, line_no);
        } else if (key == "tau") {
            cfg.backtrack.tau = parse_double(value, line_no);
        } else if (key == "eta") {
            cfg.backtrack.eta = parse_double(value, line_no);
        } else if (key == "l_init") {
            cfg.backtrack.l_init = parse_double(value, line_no);
        } else if (key == "f_star_budget") {
            cfg.f_star_budget = parse_size(value, line_no);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
    }
    if (!have_problem) throw ConfigError(0, "missing required key 'problem'");
    if (cfg.algorithms.empty()) {
        cfg.algorithms = {Algorithm::MFW, Algorithm::HalvingMFW, Algorithm::StatelessMFW,
                          Algorithm::BFW, Algorithm::BAFW};
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(0, "cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

// --- problem materialization ------------------------------------------------------

ProblemSetup build_problem(const ExperimentConfig& config) {
    ProblemSetup setup;
    switch (config.problem) {
        case Problem::Portfolio: {
            auto inst = generate_portfolio(config.dim, config.samples, config.dist, config.seed);
            setup.objective = std::make_shared<PortfolioObjective>(std::move(inst));
            setup.set = std::make_unique<ProbabilitySimplex>(config.dim);
            setup.x0_vertex = setup.set->default_start();
            break;
        }
        case Problem::KL: {
            auto inst = generate_kl(config.samples, config.dim, config.sparsity, config.noise_frac,
                                    config.seed);
            if (config.radius > 0.0) inst.radius = config.radius;
            setup.resolved_radius = inst.radius;
            auto obj = std::make_shared<KLObjective>(std::move(inst));
            setup.set = std::make_unique<UnitSimplex>(config.dim, setup.resolved_radius);
            // the default vertex must also be in dom f; columns of W are
            // strictly positive for generated data, so the first one works
            Vertex start = setup.set->default_start();
            for (std::size_t j = 0; j < config.dim; ++j) {
                Vertex v = Vertex::basis(j, setup.resolved_radius);
                if (obj->in_domain(v.dense(config.dim))) {
                    start = v;
                    break;
                }
            }
            setup.objective = obj;
            setup.x0_vertex = start;
            break;
        }
        case Problem::Logistic: {
            const double mu = config.mu >= 0.0 ? config.mu : 0.1;
            const double rho = config.radius > 0.0 ? config.radius : 5.0;
            auto inst = generate_logistic(config.samples, config.dim, mu, rho, config.seed);
            setup.resolved_mu = mu;
            setup.resolved_radius = rho;
            setup.objective = std::make_shared<LogisticObjective>(std::move(inst));
            setup.set = std::make_unique<L1Ball>(config.dim, rho);
            setup.x0_vertex = setup.set->default_start();
            break;
        }
        case Problem::BarrierQuadratic: {
            const double mu = config.mu >= 0.0 ? config.mu : 1.0;
            const double rho = config.radius > 0.0 ? config.radius : 1.0;
            auto inst = generate_barrier_quadratic(config.dim, mu, config.eig_sigma, config.seed);
            setup.resolved_mu = mu;
            setup.resolved_radius = rho;
            setup.objective = std::make_shared<BarrierQuadraticObjective>(std::move(inst));
            setup.set = std::make_unique<L1Ball>(config.dim, rho);
            // no l1-ball vertex lies in the open positive orthant; seed the
            // active set with a feasible interior atom instead
            Point x0(config.dim, rho / (2.0 * static_cast<double>(config.dim)));
            setup.x0_vertex = Vertex::atom(std::move(x0));
            break;
        }
        case Problem::Birkhoff: {
            const std::size_t side = config.dim;
            const double mu =
                config.mu >= 0.0 ? config.mu : 100.0 / std::sqrt(static_cast<double>(config.samples));
            auto inst = generate_portfolio(side * side, config.samples, config.dist, config.seed);
            auto base = std::make_shared<PortfolioObjective>(std::move(inst));
            setup.resolved_mu = mu;
            setup.objective = std::make_shared<QuadRegularizedObjective>(base, mu);
            setup.set = std::make_unique<BirkhoffPolytope>(side);
            setup.x0_vertex = setup.set->default_start();
            break;
        }
    }
    setup.x0 = setup.x0_vertex.dense(setup.set->dim());
    return setup;
}

RunTrace run_algorithm(Algorithm alg, const ProblemSetup& setup, const ExperimentConfig& config,
                       const IterateObserver& observer) {
    const Objective& obj = *setup.objective;
    const FeasibleSet& set = *setup.set;
    switch (alg) {
        case Algorithm::MFW:
            return run_mfw(obj, set, setup.x0, config.stop, observer);
        case Algorithm::HalvingMFW:
            return run_halving_mfw(obj, set, setup.x0, config.stop, observer);
        case Algorithm::StatelessMFW:
            return run_stateless_mfw(obj, set, setup.x0, config.stop, observer);
        case Algorithm::BFW:
            return run_bfw(obj, set, setup.x0, config.backtrack, config.stop, observer);
        case Algorithm::BAFW:
            return run_bafw(obj, set, setup.x0_vertex, config.backtrack, config.stop, observer);
    }
    throw std::logic_error("unreachable");
}

ReferenceOptimum estimate_f_star(const ExperimentConfig& config) {
    ProblemSetup setup = build_problem(config);
    ReferenceOptimum ref;
    ref.method = ReferenceOptimum::Method::LongRun;
    ref.run_budget = config.f_star_budget ? config.f_star_budget : 10 * config.stop.max_iter;

    StopCriteria stop;
    stop.max_iter = ref.run_budget;
    const double f0 = setup.objective->value(setup.x0);
    stop.fw_gap_tol = 1e-12 * (1.0 + std::fabs(f0));
    // the gap certificate can floor out orders of magnitude above any usable
    // tolerance while the value is already pinned; cut the stalled tail
    stop.max_stall_iters = std::max<std::size_t>(1000, ref.run_budget / 100);

    const RunTrace trace =
        run_bafw(*setup.objective, *setup.set, setup.x0_vertex, config.backtrack, stop);
    ref.f_star_est = trace.best_f;
    return ref;
}

// --- outputs -----------------------------------------------------------------------

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_gap_series(std::vector<PlotSeries>& series, const std::string& label,
                       const RunTrace& trace, double f_ref, bool vs_time) {
    PlotSeries primal, fw;
    primal.label = label + " h";
    fw.label = label + " g";
    fw.dashed = true;
    for (const IterationRecord& rec : trace.records) {
        const double x = vs_time ? rec.wall_time : static_cast<double>(rec.iter);
        if (!(x > 0.0)) continue;
        primal.x.push_back(x);
        primal.y.push_back(std::max(rec.f_value - f_ref, 1e-16));
        fw.x.push_back(x);
        fw.y.push_back(std::max(rec.fw_gap, 1e-16));
    }
    series.push_back(std::move(primal));
    series.push_back(std::move(fw));
}

}  // namespace

void write_trace_csv(const std::string& path, const RunTrace& trace, double f_ref) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write CSV: " + path);
    os << kTraceCsvHeader << '\n';
    for (const IterationRecord& rec : trace.records) {
        os << rec.iter << ',' << fmt17(rec.wall_time) << ',' << fmt17(rec.f_value) << ','
           << fmt17(rec.f_value - f_ref) << ',' << fmt17(rec.fw_gap) << ',' << fmt17(rec.step_size)
           << ',' << to_string(rec.step_type) << ',' << rec.counters.zoo << ',' << rec.counters.foo
           << ',' << rec.counters.lmo << ',' << rec.counters.dom << '\n';
    }
}

std::vector<TraceCsvRow> read_trace_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read CSV: " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty CSV: " + path);
    if (trim(line) != kTraceCsvHeader) throw std::runtime_error("unexpected CSV header in " + path);
    std::vector<TraceCsvRow> rows;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 11) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 11 fields");
        }
        TraceCsvRow row;
        row.iter = static_cast<std::size_t>(std::stoull(fields[0]));
        row.time_s = std::stod(fields[1]);
        row.f_value = std::stod(fields[2]);
        row.primal_gap = std::stod(fields[3]);
        row.fw_gap = std::stod(fields[4]);
        row.step_size = std::stod(fields[5]);
        row.step_type = fields[6];
        row.zoo = std::stoll(fields[7]);
        row.foo = std::stoll(fields[8]);
        row.lmo = std::stoll(fields[9]);
        row.dom = std::stoll(fields[10]);
        rows.push_back(std::move(row));
    }
    return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.output_dir.empty()) throw ConfigError(0, "missing required key 'output_dir'");

    // fail before any run starts if we cannot write results
    fs::create_directories(config.output_dir);
    const fs::path out_dir(config.output_dir);
    {
        const fs::path probe = out_dir / ".write_probe";
        std::ofstream os(probe);
        if (!os) throw std::runtime_error("output_dir is not writable: " + config.output_dir);
        os << "ok";
        os.close();
        fs::remove(probe);
    }

    ExperimentResult result;
    using Clock = std::chrono::steady_clock;
    const auto wall_start = Clock::now();
    result.reference = estimate_f_star(config);
    const double ref_seconds = std::chrono::duration<double>(Clock::now() - wall_start).count();

    ProblemSetup setup = build_problem(config);
    std::map<Algorithm, double> run_seconds;
    for (Algorithm alg : config.algorithms) {
        const auto t0 = Clock::now();
        result.traces.emplace(alg, run_algorithm(alg, setup, config));
        run_seconds[alg] = std::chrono::duration<double>(Clock::now() - t0).count();
    }

    const std::string prefix = std::string(to_string(config.problem));
    for (const auto& [alg, trace] : result.traces) {
        const fs::path csv = out_dir / (prefix + "_" + to_string(alg) + ".csv");
        write_trace_csv(csv.string(), trace, result.reference.f_star_est);
        result.files_written.push_back(csv.string());
    }

    std::vector<PlotSeries> iter_series, time_series;
    for (const auto& [alg, trace] : result.traces) {
        append_gap_series(iter_series, to_string(alg), trace, result.reference.f_star_est, false);
        append_gap_series(time_series, to_string(alg), trace, result.reference.f_star_est, true);
    }
    const fs::path svg_iter = out_dir / "gap_vs_iteration.svg";
    const fs::path svg_time = out_dir / "gap_vs_time.svg";
    write_loglog_svg(svg_iter.string(), prefix + ": convergence vs iteration", "iteration",
                     "primal gap h (solid), FW gap g (dashed)", iter_series);
    write_loglog_svg(svg_time.string(), prefix + ": convergence vs wall time", "seconds",
                     "primal gap h (solid), FW gap g (dashed)", time_series);
    result.files_written.push_back(svg_iter.string());
    result.files_written.push_back(svg_time.string());

    // deterministic summary; anything wall-clock related goes to metadata.txt
    const fs::path summary = out_dir / "summary.txt";
    {
        std::ofstream os(summary);
        os << "problem: " << prefix << "\nseed: " << config.seed << "\nmax_iter: " << config.stop.max_iter
           << "\nf_star_est: " << fmt17(result.reference.f_star_est)
           << "\nreference_budget: " << result.reference.run_budget << "\n\n";
        for (const auto& [alg, trace] : result.traces) {
            if (trace.records.empty()) {
                os << to_string(alg) << ": no iterations recorded\n";
                continue;
            }
            const IterationRecord& last = trace.records.back();
            double min_fw = std::numeric_limits<double>::infinity();
            for (const IterationRecord& rec : trace.records) min_fw = std::min(min_fw, rec.fw_gap);
            os << to_string(alg) << ":\n"
               << "  iterations: " << trace.records.size() << '\n'
               << "  status: " << to_string(trace.terminal_status) << '\n'
               << "  final_f: " << fmt17(last.f_value) << '\n'
               << "  final_primal_gap: " << fmt17(last.f_value - result.reference.f_star_est) << '\n'
               << "  final_fw_gap: " << fmt17(last.fw_gap) << '\n'
               << "  min_fw_gap: " << fmt17(min_fw) << '\n'
               << "  oracle_calls: zoo=" << last.counters.zoo << " foo=" << last.counters.foo
               << " lmo=" << last.counters.lmo << " dom=" << last.counters.dom << '\n';
            const std::size_t t_hi = last.iter;
            const std::size_t t_lo = std::max<std::size_t>(10, t_hi / 100);
            os << "  primal_slope: ";
            try {
                const RateFit fit =
                    fit_rate(trace, GapKind::Primal, t_lo, t_hi, result.reference.f_star_est);
                char buf[80];
                std::snprintf(buf, sizeof buf, "%.4f (R^2 %.4f over t in [%zu, %zu])", fit.slope,
                              fit.r_squared, t_lo, t_hi);
                os << buf << '\n';
            } catch (const std::exception&) {
                os << "n/a\n";
            }
        }
    }
    result.files_written.push_back(summary.string());

    const fs::path metadata = out_dir / "metadata.txt";
    {
        std::ofstream os(metadata);
        const std::time_t now = std::time(nullptr);
        char stamp[64];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
        os << "generated_at_utc: " << stamp << '\n';
        os << "reference_run_seconds: " << ref_seconds << '\n';
        for (const auto& [alg, seconds] : run_seconds) {
            os << to_string(alg) << "_seconds: " << seconds << '\n';
        }
    }
    result.files_written.push_back(metadata.string());
    return result;
}

AuditReport run_audit(const ExperimentConfig& config, std::size_t gradient_points,
                      std::size_t lmo_trials) {
    ProblemSetup setup = build_problem(config);
    SplitMix64 rng(config.seed ^ 0xFEEDFACEULL);
    AuditReport report;

    for (std::size_t k = 0; k < gradient_points; ++k) {
        Point x = setup.set->sample(rng);
        if (!setup.objective->in_domain(x)) {
            // pull toward the known-good start until inside
            for (int shrink = 0; shrink < 60 && !setup.objective->in_domain(x); ++shrink) {
                for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (x[i] + setup.x0[i]);
            }
            if (!setup.objective->in_domain(x)) continue;
        }
        report.worst_gradient_error =
            std::max(report.worst_gradient_error, fd_gradient_audit(*setup.objective, x));
        ++report.gradient_points;
    }

    for (std::size_t k = 0; k < lmo_trials; ++k) {
        Point d(setup.set->dim());
        for (double& v : d) v = rng.normal();
        const Vertex v = setup.set->lmo(d);
        const double vd = v.dot(d);
        const Point x = setup.set->sample(rng);
        report.worst_lmo_violation = std::max(report.worst_lmo_violation, vd - inner(x, d));
        ++report.lmo_trials;
    }

    report.passed = report.gradient_points > 0 && report.worst_gradient_error <= 1e-5 &&
                    report.worst_lmo_violation <= 1e-10;
    return report;
}

}  // namespace fwopt
