#pragma once

#include <cstdint>
#include <string>

#include "fscan/grid.hpp"
#include "fscan/matcher.hpp"

namespace fscan {

struct BenchReport {
    std::string workload;
    int n_xy = 0;
    int n_theta = 0;
    int passes = 0;
    double mean_hz = 0.0;
    double median_ms = 0.0;
    double p95_ms = 0.0;
    std::string host;
};

/// Grid populated by uniform noise in [0, 1); deterministic under the seed.
ScanGrid noise_grid(const GridSpec& spec, std::uint64_t seed);

/// Per-pass wall clock over `passes` runs of the workload ("matcher",
/// "oracle", or "noop") on a fixed noise-populated input pair, after
/// discarding `burn_in` warmup passes. Requires passes >= 100 and
/// burn_in >= 10. Single-threaded measurement loop.
BenchReport run_bench(const std::string& workload, const MatchConfig& cfg,
                      int passes, int burn_in, std::uint64_t seed);

/// CPU model and logical core count, commas stripped for CSV embedding.
std::string host_descriptor();

std::string bench_csv_header();
std::string to_csv_row(const BenchReport& report);

}  // namespace fscan
