#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "fwopt/objective.hpp"

namespace fwopt {

enum class StepType { FW, Away, Drop, Frozen };

inline const char* to_string(StepType t) {
    switch (t) {
        case StepType::FW: return "FW";
        case StepType::Away: return "Away";
        case StepType::Drop: return "Drop";
        case StepType::Frozen: return "Frozen";
    }
    return "?";
}

enum class TerminalStatus { GapReached, MaxIter, TimeLimit };

inline const char* to_string(TerminalStatus s) {
    switch (s) {
        case TerminalStatus::GapReached: return "GapReached";
        case TerminalStatus::MaxIter: return "MaxIter";
        case TerminalStatus::TimeLimit: return "TimeLimit";
    }
    return "?";
}

struct IterationRecord {
    std::size_t iter = 0;
    double wall_time = 0.0;  ///< seconds since the run started, monotonic clock
    double f_value = 0.0;    ///< objective after the iteration (unchanged on frozen steps)
    double fw_gap = 0.0;     ///< certificate at the pre-step iterate
    double step_size = 0.0;  ///< in [0,1]; 0 when frozen
    StepType step_type = StepType::FW;
    OracleCounters counters;  ///< cumulative snapshot taken when the record is written
    /// Away-step runs additionally log w(x,S) = away gap + FW gap; NaN elsewhere.
    double away_fw_gap = std::numeric_limits<double>::quiet_NaN();
};

struct RunTrace {
    std::vector<IterationRecord> records;
    TerminalStatus terminal_status = TerminalStatus::MaxIter;
    double best_f = std::numeric_limits<double>::infinity();
    /// Counter snapshot after setup (initial value/gradient/LMO), before iteration 0.
    /// Per-iteration deltas are taken against this baseline for the first record.
    OracleCounters initial_counters;
};

struct StopCriteria {
    std::size_t max_iter = 1000;
    double fw_gap_tol = 0.0;
    std::optional<double> time_limit_s;
    /// Optional no-improvement budget: stop once best_f has not strictly
    /// improved for this many iterations. Reference runs use it to cut the
    /// tail where the iterate is pinned at the floating-point floor and the
    /// gap certificate sits above any usable tolerance.
    std::optional<std::size_t> max_stall_iters;
};

}  // namespace fwopt
