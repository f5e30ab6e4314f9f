#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fwopt/diagnostics.hpp"
#include "fwopt/experiment.hpp"
#include "fwopt/instance_io.hpp"
#include "support/test_util.hpp"

using namespace fwopt;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("fwopt_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

/// CSV text with the time_s field blanked; the clock column is the only
/// nondeterministic one.
std::string mask_time_column(const std::string& csv) {
    std::stringstream in(csv), out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            out << line << '\n';
            header = false;
            continue;
        }
        const std::size_t first = line.find(',');
        const std::size_t second = line.find(',', first + 1);
        out << line.substr(0, first + 1) << "t" << line.substr(second) << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("round trip of a full config") {
        const ExperimentConfig cfg = parse_config_text(
            "# comment\n"
            "problem = logistic\n"
            "seed = 9\n"
            "dim = 12\n"
            "samples = 30\n"
            "mu = 0.25\n"
            "radius = 4\n"
            "algorithms = mfw, bafw\n"
            "max_iter = 77\n"
            "fw_gap_tol = 1e-8\n"
            "tau = 2.5\n"
            "eta = 0.8\n"
            "output_dir = /tmp/somewhere\n");
        CHECK(cfg.problem == Problem::Logistic);
        CHECK(cfg.seed == 9);
        CHECK(cfg.dim == 12);
        CHECK(cfg.samples == 30);
        CHECK(cfg.mu == doctest::Approx(0.25));
        CHECK(cfg.radius == doctest::Approx(4.0));
        REQUIRE(cfg.algorithms.size() == 2);
        CHECK(cfg.algorithms[0] == Algorithm::MFW);
        CHECK(cfg.algorithms[1] == Algorithm::BAFW);
        CHECK(cfg.stop.max_iter == 77);
        CHECK(cfg.stop.fw_gap_tol == doctest::Approx(1e-8));
        CHECK(cfg.backtrack.tau == doctest::Approx(2.5));
    }
    SUBCASE("misspelled keys carry the line number") {
        try {
            parse_config_text("problem = portfolio\nmax_itr = 10\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("max_itr") != std::string::npos);
        }
    }
    SUBCASE("missing problem key is rejected") {
        CHECK_THROWS_AS(parse_config_text("seed = 1\n"), ConfigError);
    }
    SUBCASE("bad values are rejected with their line") {
        try {
            parse_config_text("problem = portfolio\nseed = banana\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("estimate_f_star against the analytic simplex projection") {
    // quadratic test objective: the constrained optimum is the projection of
    // the center onto the simplex, computable in closed form
    const testing::QuadraticObjective obj({0.9, 0.4, -0.2});
    const ProbabilitySimplex set(3);
    const Point opt = testing::project_simplex({0.9, 0.4, -0.2});
    const double f_star = obj.value(opt);

    StopCriteria stop;
    stop.max_iter = 20000;
    stop.fw_gap_tol = 1e-13;
    const RunTrace ref = run_bafw(obj, set, Vertex::basis(0, 1.0), BacktrackConfig{}, stop);
    CHECK(ref.best_f == doctest::Approx(f_star).epsilon(1e-8));
}

TEST_CASE("estimate_f_star is deterministic and below every trace") {
    ExperimentConfig cfg;
    cfg.problem = Problem::Portfolio;
    cfg.dim = 8;
    cfg.samples = 12;
    cfg.seed = 5;
    cfg.stop.max_iter = 300;

    const ReferenceOptimum a = estimate_f_star(cfg);
    const ReferenceOptimum b = estimate_f_star(cfg);
    CHECK(a.f_star_est == b.f_star_est);
    CHECK(a.run_budget == 3000);

    const ProblemSetup setup = build_problem(cfg);
    for (Algorithm alg : {Algorithm::MFW, Algorithm::BFW, Algorithm::BAFW}) {
        const RunTrace trace = run_algorithm(alg, setup, cfg);
        CHECK(a.f_star_est <= trace.best_f + 1e-9);
    }
}

TEST_CASE("run_experiment writes the documented artifact set") {
    const fs::path dir = temp_dir("experiment");
    ExperimentConfig cfg;
    cfg.problem = Problem::Portfolio;
    cfg.dim = 6;
    cfg.samples = 10;
    cfg.seed = 3;
    cfg.stop.max_iter = 60;
    cfg.algorithms = {Algorithm::MFW, Algorithm::BFW};
    cfg.output_dir = dir.string();

    const ExperimentResult result = run_experiment(cfg);
    CHECK(fs::exists(dir / "portfolio_mfw.csv"));
    CHECK(fs::exists(dir / "portfolio_bfw.csv"));
    CHECK(fs::exists(dir / "gap_vs_iteration.svg"));
    CHECK(fs::exists(dir / "gap_vs_time.svg"));
    CHECK(fs::exists(dir / "summary.txt"));

    // one CSV per algorithm, two SVGs, one summary, one metadata file
    std::size_t csvs = 0, svgs = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".csv") ++csvs;
        if (entry.path().extension() == ".svg") ++svgs;
    }
    CHECK(csvs == 2);
    CHECK(svgs == 2);

    // row count = records + header
    const auto rows = read_trace_csv((dir / "portfolio_mfw.csv").string());
    CHECK(rows.size() == result.traces.at(Algorithm::MFW).records.size());

    // the reference estimate is the best-known value
    for (const auto& [alg, trace] : result.traces) {
        CHECK(result.reference.f_star_est <= trace.best_f + 1e-9);
    }
}

TEST_CASE("rerunning an experiment reproduces the CSVs except for the clock") {
    const fs::path dir_a = temp_dir("det_a");
    const fs::path dir_b = temp_dir("det_b");
    ExperimentConfig cfg;
    cfg.problem = Problem::KL;
    cfg.dim = 5;
    cfg.samples = 8;
    cfg.seed = 12;
    cfg.stop.max_iter = 40;
    cfg.algorithms = {Algorithm::MFW, Algorithm::BAFW};

    cfg.output_dir = dir_a.string();
    run_experiment(cfg);
    cfg.output_dir = dir_b.string();
    run_experiment(cfg);

    for (const char* name : {"kl_mfw.csv", "kl_bafw.csv", "summary.txt"}) {
        const std::string a = slurp(dir_a / name);
        const std::string b = slurp(dir_b / name);
        if (std::string(name).find(".csv") != std::string::npos) {
            CHECK(mask_time_column(a) == mask_time_column(b));
        } else {
            CHECK(a == b);
        }
    }
}

TEST_CASE("unwritable output directory fails before any run") {
    ExperimentConfig cfg;
    cfg.problem = Problem::Portfolio;
    cfg.dim = 4;
    cfg.samples = 6;
    cfg.stop.max_iter = 10;
    cfg.output_dir = "/proc/not_writable/nested";
    CHECK_THROWS(run_experiment(cfg));
}

TEST_CASE("instance files round-trip exactly") {
    const fs::path dir = temp_dir("io");

    SUBCASE("portfolio") {
        const auto inst = generate_portfolio(4, 3, ReturnsDistribution::LogNormal, 77);
        save_instance((dir / "p.txt").string(), inst, 77);
        const auto back = load_portfolio_instance((dir / "p.txt").string());
        CHECK(back.n == inst.n);
        CHECK(back.p == inst.p);
        CHECK(back.returns == inst.returns);
        CHECK(peek_instance_kind((dir / "p.txt").string()) == "portfolio");
    }
    SUBCASE("kl") {
        const auto inst = generate_kl(5, 4, 0.5, 0.2, 9);
        save_instance((dir / "k.txt").string(), inst, 9);
        const auto back = load_kl_instance((dir / "k.txt").string());
        CHECK(back.w == inst.w);
        CHECK(back.y == inst.y);
        CHECK(back.radius == inst.radius);
        CHECK(back.signal == inst.signal);
    }
    SUBCASE("logistic") {
        const auto inst = generate_logistic(6, 4, 0.3, 2.0, 8);
        save_instance((dir / "l.txt").string(), inst, 8);
        const auto back = load_logistic_instance((dir / "l.txt").string());
        CHECK(back.a == inst.a);
        CHECK(back.labels == inst.labels);
        CHECK(back.l2_reg == inst.l2_reg);
        CHECK(back.radius == inst.radius);
    }
    SUBCASE("barrier quadratic") {
        const auto inst = generate_barrier_quadratic(5, 0.6, 1.0, 21);
        save_instance((dir / "b.txt").string(), inst, 21);
        const auto back = load_barrier_quadratic_instance((dir / "b.txt").string());
        CHECK(back.q == inst.q);
        CHECK(back.b == inst.b);
        CHECK(back.barrier_weight == inst.barrier_weight);
    }
}

TEST_CASE("csv schema is pinned") {
    CHECK(std::string(kTraceCsvHeader) ==
          "iter,time_s,f_value,primal_gap,fw_gap,step_size,step_type,zoo,foo,lmo,dom");

    const fs::path dir = temp_dir("csv");
    RunTrace trace;
    for (std::size_t t = 1; t <= 12; ++t) {
        IterationRecord rec;
        rec.iter = t;
        rec.f_value = 7.0 / static_cast<double>(t);
        rec.fw_gap = 7.0 / static_cast<double>(t);
        rec.step_size = 0.5;
        trace.records.push_back(rec);
    }
    const std::string path = (dir / "t.csv").string();
    write_trace_csv(path, trace, 0.0);
    const std::string text = slurp(dir / "t.csv");
    CHECK(text.substr(0, std::string(kTraceCsvHeader).size()) == kTraceCsvHeader);

    const auto rows = read_trace_csv(path);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].primal_gap == doctest::Approx(7.0));
    CHECK(rows[0].step_type == "FW");
}

TEST_CASE("audit passes on every problem family") {
    for (Problem p : {Problem::Portfolio, Problem::KL, Problem::Logistic,
                      Problem::BarrierQuadratic}) {
        ExperimentConfig cfg;
        cfg.problem = p;
        cfg.dim = 6;
        cfg.samples = 10;
        cfg.seed = 2;
        const AuditReport report = run_audit(cfg, 6, 60);
        INFO("problem ", to_string(p));
        CHECK(report.passed);
        CHECK(report.worst_gradient_error <= 1e-5);
        CHECK(report.worst_lmo_violation <= 1e-10);
    }
}

TEST_CASE("birkhoff experiment setup produces feasible doubly stochastic runs") {
    ExperimentConfig cfg;
    cfg.problem = Problem::Birkhoff;
    cfg.dim = 4;  // 4x4 matrices, ambient dimension 16
    cfg.samples = 10;
    cfg.seed = 6;
    cfg.stop.max_iter = 120;

    const ProblemSetup setup = build_problem(cfg);
    CHECK(setup.set->dim() == 16);
    const BirkhoffPolytope* polytope = dynamic_cast<const BirkhoffPolytope*>(setup.set.get());
    REQUIRE(polytope != nullptr);

    const IterateObserver observer = [&](std::size_t, const Point& x) {
        REQUIRE(polytope->contains(x));
    };
    const RunTrace trace = run_algorithm(Algorithm::BAFW, setup, cfg, observer);
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        CHECK(trace.records[i].f_value <= trace.records[i - 1].f_value);
    }
}
