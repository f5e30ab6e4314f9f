#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fwopt/algorithms.hpp"
#include "fwopt/lmo.hpp"
#include "fwopt/objectives.hpp"
#include "fwopt/trace.hpp"

namespace fwopt {

enum class Problem { Portfolio, KL, Logistic, BarrierQuadratic, Birkhoff };
enum class Algorithm { MFW, HalvingMFW, StatelessMFW, BFW, BAFW };

const char* to_string(Problem p);
const char* to_string(Algorithm a);
Problem parse_problem(const std::string& s);
Algorithm parse_algorithm(const std::string& s);
ReturnsDistribution parse_distribution(const std::string& s);

struct ExperimentConfig {
    Problem problem = Problem::Portfolio;
    std::uint64_t seed = 1;
    std::vector<Algorithm> algorithms;  // empty means all five

    // problem sizes: dim is the ambient dimension knob (matrix side for
    // Birkhoff), samples the number of rows/periods/observations
    std::size_t dim = 50;
    std::size_t samples = 100;

    ReturnsDistribution dist = ReturnsDistribution::LogNormal;
    double sparsity = 0.3;
    double noise_frac = 0.1;
    double radius = 0.0;  ///< feasible-set radius; 0 picks the problem default
    double mu = -1.0;     ///< regularization / barrier weight; negative picks the default
    double eig_sigma = 2.0;

    StopCriteria stop{};
    BacktrackConfig backtrack{};
    std::size_t f_star_budget = 0;  ///< reference-run iterations; 0 means 10 x max_iter
    std::string output_dir;
};

/// Malformed configuration input; line is 1-based, 0 when not line specific.
struct ConfigError : std::runtime_error {
    ConfigError(int line_no, const std::string& msg)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

/// Flat `key = value` configuration text. '#' starts a comment; unknown keys
/// are hard errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// In-memory materialization of a configured problem.
struct ProblemSetup {
    std::shared_ptr<const Objective> objective;
    std::unique_ptr<FeasibleSet> set;
    Point x0;
    Vertex x0_vertex = Vertex::zero();  ///< active-set seed (vertex or feasible atom)
    double resolved_mu = 0.0;
    double resolved_radius = 0.0;
};

ProblemSetup build_problem(const ExperimentConfig& config);

struct ReferenceOptimum {
    double f_star_est = 0.0;
    enum class Method { LongRun, Analytic } method = Method::LongRun;
    std::size_t run_budget = 0;
};

/// High-budget away-step reference run; the returned estimate is the best value
/// seen. Deterministic given the config.
ReferenceOptimum estimate_f_star(const ExperimentConfig& config);

RunTrace run_algorithm(Algorithm alg, const ProblemSetup& setup, const ExperimentConfig& config,
                       const IterateObserver& observer = {});

struct ExperimentResult {
    std::map<Algorithm, RunTrace> traces;
    ReferenceOptimum reference;
    std::vector<std::string> files_written;
};

/// Runs every configured algorithm, then writes one CSV per algorithm, two SVG
/// convergence plots (primal/FW gap against iteration and wall time, log-log),
/// a deterministic summary, and a metadata file holding the timing data.
/// Fails before any run starts when output_dir is not writable.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV schema: iter,time_s,f_value,primal_gap,fw_gap,step_size,step_type,zoo,foo,lmo,dom
extern const char* kTraceCsvHeader;
void write_trace_csv(const std::string& path, const RunTrace& trace, double f_ref);

struct TraceCsvRow {
    std::size_t iter = 0;
    double time_s = 0.0;
    double f_value = 0.0;
    double primal_gap = 0.0;
    double fw_gap = 0.0;
    double step_size = 0.0;
    std::string step_type;
    std::int64_t zoo = 0, foo = 0, lmo = 0, dom = 0;
};
std::vector<TraceCsvRow> read_trace_csv(const std::string& path);

struct AuditReport {
    double worst_gradient_error = 0.0;
    double worst_lmo_violation = 0.0;  ///< max over samples of <v,d> - <x,d>
    std::size_t gradient_points = 0;
    std::size_t lmo_trials = 0;
    bool passed = false;
};

/// Finite-difference gradient audit plus LMO optimality certificates on random
/// feasible points.
AuditReport run_audit(const ExperimentConfig& config, std::size_t gradient_points = 20,
                      std::size_t lmo_trials = 200);

}  // namespace fwopt
