#include "fscan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "fscan/imageops.hpp"
#include "fscan/oracle.hpp"
#include "fscan/rng.hpp"
#include "fscan/synth.hpp"

namespace fscan {

namespace {

Array2D random_grid(int n, std::uint64_t seed) {
    Rng rng(seed);
    Array2D g(n, n);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.uniform();
    return g;
}

// Content moved by (dr, dc) with wraparound: out[r][c] = in[r-dr][c-dc].
Array2D circular_shift(const Array2D& in, int dr, int dc) {
    const int rows = static_cast<int>(in.rows());
    const int cols = static_cast<int>(in.cols());
    Array2D out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out(r, c) = in(((r - dr) % rows + rows) % rows,
                           ((c - dc) % cols + cols) % cols);
    return out;
}

// O(n^4) reference transform, centred layout.
ComplexArray2D direct_dft2(const Array2D& g) {
    const int n = static_cast<int>(g.rows());
    const int h = n / 2;
    ComplexArray2D out(n, n);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            std::complex<double> acc = 0.0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    acc += g(r, c) *
                           std::exp(std::complex<double>(
                               0.0, -2.0 * kPi *
                                        (double(u - h) * r / n + double(v - h) * c / n)));
            out(u, v) = acc;
        }
    }
    return out;
}

double rel_rms(const Array2D& a, const Array2D& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

VerifyItem check(const std::string& name, double value, double bound) {
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%.3e (bound %.1e)", value, bound);
    return {name, value <= bound, detail};
}

}  // namespace

VerifyReport verify_fourier_suite() {
    VerifyReport report;

    {
        const Array2D g = random_grid(33, 11);
        const Array2D m0 = magnitude(dft2(g));
        const Array2D m1 = magnitude(dft2(circular_shift(g, 5, -7)));
        report.items.push_back(
            check("magnitude shift invariance", rel_rms(m1, m0), 1e-9));
    }
    {
        const Array2D g = random_grid(8, 12);
        const Spectrum s = dft2(g);
        const ComplexArray2D ref = direct_dft2(g);
        double max_diff = 0.0, max_ref = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            max_diff = std::max(max_diff, std::abs(s.values[i] - ref[i]));
            max_ref = std::max(max_ref, std::abs(ref[i]));
        }
        report.items.push_back(
            check("dft matches direct summation", max_diff / max_ref, 1e-10));
    }
    {
        const Array2D g = random_grid(17, 13);
        const Spectrum s = dft2(g);
        double spec_energy = 0.0, grid_energy = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i)
            spec_energy += std::norm(s.values[i]);
        for (std::size_t i = 0; i < g.size(); ++i) grid_energy += g[i] * g[i];
        const double expected = 17.0 * 17.0 * grid_energy;
        report.items.push_back(check("parseval energy balance",
                                     std::abs(spec_energy - expected) / expected,
                                     1e-6));
    }
    {
        const Array2D g = random_grid(21, 14);
        report.items.push_back(
            check("inverse transform round-trip", rel_rms(idft2(dft2(g)), g), 1e-9));
    }
    return report;
}

VerifyReport verify_oracle_suite(const CorrelateFn& correlate) {
    VerifyReport report;
    const CorrelateFn corr =
        correlate ? correlate
                  : [](const Array2D& a, const Array2D& b) { return xcorr(a, b); };

    {
        const Array2D a = random_grid(16, 21);
        const CorrelationSurface c = corr(a, circular_shift(a, 3, -5));
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.scores.size(); ++i)
            if (c.scores[i] > c.scores[best]) best = i;
        const int row = static_cast<int>(best / c.scores.cols());
        const int col = static_cast<int>(best % c.scores.cols());
        const bool pass = row == 8 + 3 && col == 8 - 5;
        char detail[96];
        std::snprintf(detail, sizeof(detail),
                      "peak lag (%d, %d), expected (3, -5)", row - 8, col - 8);
        report.items.push_back({"integer shift recovery", pass, detail});
    }

    MatchConfig cfg;
    cfg.n_xy = 65;
    cfg.n_theta = 129;
    cfg.delta_theta = kPi / 129.0;
    cfg.n_radius = 0;
    cfg.pad_angle = -1;
    // The band floor has to clear the DC/boundary-window pedestal by a few
    // spectral bins; 0.03 only does that on production-sized grids.
    cfg.band_lo = 0.15;
    finalize(cfg);
    const GridSpec spec{cfg.n_xy, cfg.delta_xy};

    std::vector<double> thetas;
    for (int k = 0; k < cfg.n_theta; ++k) {
        const double th = (k - cfg.n_theta / 2) * cfg.delta_theta;
        if (std::abs(th) <= 0.6) thetas.push_back(th);
    }

    {
        const Pose2D truths[] = {{0.30, 1.2, -0.8}, {-0.22, -2.0, 0.4}, {0.05, 0.0, 2.4}};
        bool all = true;
        std::string detail;
        for (std::size_t i = 0; i < 3; ++i) {
            const Scene scene = default_scene(spec, 7000 + i);
            const auto [f, g, truth] = make_pair(scene, truths[i], spec);
            const MatchResult m = scan_match(f, g, cfg);
            const OracleResult o = brute_force_match(f, g, thetas, cfg);
            const double dth = std::abs(normalize_angle(m.pose.theta - o.pose.theta));
            const double dt = (m.pose.translation() - o.pose.translation()).norm();
            char buf[96];
            std::snprintf(buf, sizeof(buf), "pair %zu: dtheta %.4f, dt %.3f; ", i,
                          dth, dt);
            detail += buf;
            if (dth > 2.0 * cfg.delta_theta || dt > spec.delta) all = false;
        }
        report.items.push_back({"matcher agrees with exhaustive search", all, detail});
    }

    {
        const Scene scene = default_scene(spec, 7100);
        const auto [f, g, truth] = make_pair(scene, Pose2D{0.2, 1.6, -1.2}, spec);
        const OracleResult o = brute_force_match(f, g, thetas, cfg);
        const int n = spec.n;
        const int big = next_fast_size(2 * n - 1);
        const int h = big / 2;
        const int half = (n - 1) / 2;
        bool pass = true;
        double worst = o.score;
        for (std::size_t ti = 0; ti < thetas.size(); ti += 17) {
            const ScanGrid gr = rotate_bilinear(g, -thetas[ti]);
            const CorrelationSurface c =
                corr(zero_pad(f.values, big), zero_pad(gr.values, big));
            for (int off = -half; off <= half; off += 13) {
                const double v = c.scores(h + off, h - off / 2);
                if (v > o.score) {
                    pass = false;
                    worst = v;
                }
            }
        }
        char detail[96];
        std::snprintf(detail, sizeof(detail), "best %.6g vs sampled max %.6g",
                      o.score, worst);
        report.items.push_back({"oracle score is the maximum", pass, detail});
    }

    return report;
}

}  // namespace fscan
