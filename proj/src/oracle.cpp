#include "fscan/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "fscan/imageops.hpp"
#include "fscan/parallel.hpp"

namespace fscan {

namespace {

struct ThetaBest {
    double score;
    int row, col;  // position within the central n x n lag window
};

// Best translation score for one de-rotated candidate; lowest linear index
// wins ties so the reduction stays deterministic.
ThetaBest score_theta(const ScanGrid& f, const ScanGrid& g, double theta) {
    const int n = f.spec.n;
    const int big = next_fast_size(2 * n - 1);
    const ScanGrid gr = rotate_bilinear(g, -theta);
    const CorrelationSurface raw =
        xcorr(zero_pad(f.values, big), zero_pad(gr.values, big));
    const int h = big / 2;
    const int half = (n - 1) / 2;
    ThetaBest best{raw.scores(h + half, h - half), 0, 0};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = raw.scores(h - (i - half), h + (j - half));
            if (v > best.score) best = {v, i, j};
        }
    }
    return best;
}

}  // namespace

OracleResult brute_force_match(const ScanGrid& f, const ScanGrid& g,
                               const std::vector<double>& thetas,
                               const MatchConfig& cfg) {
    if (!(f.spec == g.spec))
        throw std::invalid_argument("brute_force_match: grid specs differ");
    if (thetas.empty())
        throw std::invalid_argument("brute_force_match: empty theta candidate list");
    (void)cfg;  // search geometry is fully determined by the scans and thetas

    const int n = f.spec.n;
    const int half = (n - 1) / 2;
    const double delta = f.spec.delta;

    std::vector<ThetaBest> per_theta(thetas.size());
    parallel_for(0, static_cast<int>(thetas.size()), thread_budget(),
                 [&](int k) { per_theta[k] = score_theta(f, g, thetas[k]); });

    std::size_t winner = 0;
    for (std::size_t k = 1; k < thetas.size(); ++k)
        if (per_theta[k].score > per_theta[winner].score) winner = k;

    const ThetaBest& b = per_theta[winner];
    const double theta = thetas[winner];
    const Vec2 d{(b.col - half) * delta, (b.row - half) * delta};
    const Vec2 t = rotate_vec(theta, d);
    return {Pose2D{normalize_angle(theta), t.x, t.y}, b.score};
}

TimingComparison timing_comparison(const ScanGrid& f, const ScanGrid& g,
                                   const MatchConfig& cfg, int repeats) {
    if (repeats < 10)
        throw std::invalid_argument("timing_comparison: repeats must be >= 10");

    std::vector<double> thetas(cfg.n_theta);
    for (int k = 0; k < cfg.n_theta; ++k)
        thetas[k] = (k - cfg.n_theta / 2) * cfg.delta_theta;

    auto time_ms = [](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    auto median_of = [&](auto&& fn) {
        constexpr int kBurnIn = 3;
        for (int i = 0; i < kBurnIn; ++i) fn();
        std::vector<double> ms(repeats);
        for (int i = 0; i < repeats; ++i) ms[i] = time_ms(fn);
        std::sort(ms.begin(), ms.end());
        return ms[ms.size() / 2];
    };

    TimingComparison out;
    out.repeats = repeats;
    out.matcher_median_ms = median_of([&] { (void)scan_match(f, g, cfg); });
    out.oracle_median_ms =
        median_of([&] { (void)brute_force_match(f, g, thetas, cfg); });
    out.ratio = out.oracle_median_ms / out.matcher_median_ms;
    return out;
}

}  // namespace fscan
