#pragma once

#include <vector>

#include "fscan/grid.hpp"
#include "fscan/matcher.hpp"

namespace fscan {

struct OracleResult {
    Pose2D pose;
    double score = 0.0;
};

/// Exhaustive correlative search: for every candidate theta, de-rotate g and
/// score the zero-padded translation correlation, tracking the global hard
/// argmax over (theta, tx, ty). Ties break toward the earlier theta, then
/// the lower linear surface index. Evaluates candidates in parallel up to
/// thread_budget() with a deterministic ordered reduction.
OracleResult brute_force_match(const ScanGrid& f, const ScanGrid& g,
                               const std::vector<double>& thetas,
                               const MatchConfig& cfg);

struct TimingComparison {
    double matcher_median_ms = 0.0;
    double oracle_median_ms = 0.0;
    double ratio = 0.0;  // oracle / matcher
    int repeats = 0;
};

/// Median wall time per match for both paths on the same inputs, after a
/// short burn-in. The oracle searches the matcher's full theta grid.
TimingComparison timing_comparison(const ScanGrid& f, const ScanGrid& g,
                                   const MatchConfig& cfg, int repeats);

}  // namespace fscan
