#pragma once

#include <iosfwd>
#include <string>

#include "fwopt/objectives.hpp"

namespace fwopt {

/// Text instance files: a header line `problem version dims... seed [knobs...]`
/// followed by whitespace-separated matrices, one row per line, doubles printed
/// with 17 significant digits so values round-trip exactly.

void save_instance(const std::string& path, const PortfolioInstance& inst, std::uint64_t seed);
void save_instance(const std::string& path, const KLInstance& inst, std::uint64_t seed);
void save_instance(const std::string& path, const LogisticInstance& inst, std::uint64_t seed);
void save_instance(const std::string& path, const BarrierQuadraticInstance& inst, std::uint64_t seed);

PortfolioInstance load_portfolio_instance(const std::string& path);
KLInstance load_kl_instance(const std::string& path);
LogisticInstance load_logistic_instance(const std::string& path);
BarrierQuadraticInstance load_barrier_quadratic_instance(const std::string& path);

/// First whitespace-separated token of the header line.
std::string peek_instance_kind(const std::string& path);

}  // namespace fwopt
