#include "fscan/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fscan/imageops.hpp"

namespace fscan {

void finalize(MatchConfig& cfg) {
    if (cfg.n_radius <= 0) cfg.n_radius = (cfg.n_xy + 1) / 2;
    if (cfg.pad_angle < 0)
        cfg.pad_angle = std::min((cfg.n_theta + 7) / 8, cfg.n_theta - 1);
}

void validate(const MatchConfig& cfg) {
    if (cfg.n_theta < 1) throw std::invalid_argument("config: n_theta must be >= 1");
    if (!(cfg.delta_theta > 0.0))
        throw std::invalid_argument("config: delta_theta must be positive");
    if (cfg.n_theta * cfg.delta_theta > kPi + 1e-9)
        throw std::invalid_argument("config: n_theta * delta_theta must not exceed pi");
    if (!(cfg.t_theta > 0.0) || !(cfg.t_xy > 0.0))
        throw std::invalid_argument("config: softmax gains must be positive");
    if (cfg.n_xy < 3 || cfg.n_xy % 2 == 0)
        throw std::invalid_argument("config: n_xy must be odd and >= 3");
    if (!(cfg.delta_xy > 0.0))
        throw std::invalid_argument("config: delta_xy must be positive");
    if (!(cfg.band_lo >= 0.0 && cfg.band_lo < cfg.band_hi && cfg.band_hi <= 1.0))
        throw std::invalid_argument("config: band must satisfy 0 <= lo < hi <= 1");
    if (cfg.n_theta > 1 && cfg.n_radius < 2)
        throw std::invalid_argument("config: n_radius must be >= 2");
    if (cfg.pad_angle < 0 || cfg.pad_angle >= cfg.n_theta)
        throw std::invalid_argument("config: need 0 <= pad_angle < n_theta");
    if (cfg.softargmax_window < 1)
        throw std::invalid_argument("config: softargmax_window must be >= 1");
}

namespace {

struct HardPeak {
    double score;
    int row, col;
};

// Lowest linear index wins ties, so the result is deterministic.
HardPeak hard_argmax(const Array2D& s) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > s[best]) best = i;
    const int cols = static_cast<int>(s.cols());
    return {s[best], static_cast<int>(best / cols), static_cast<int>(best % cols)};
}

}  // namespace

std::pair<double, double> soft_argmax(const CorrelationSurface& s, double gain,
                                      int window, bool normalize) {
    const int rows = static_cast<int>(s.scores.rows());
    const int cols = static_cast<int>(s.scores.cols());
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("soft_argmax: empty surface");
    if (s.row_coords.size() != static_cast<std::size_t>(rows) ||
        s.col_coords.size() != static_cast<std::size_t>(cols))
        throw std::invalid_argument("soft_argmax: coords do not match scores");

    const HardPeak peak = hard_argmax(s.scores);
    const int r0 = std::max(0, peak.row - window);
    const int r1 = std::min(rows - 1, peak.row + window);
    const int c0 = std::max(0, peak.col - window);
    const int c1 = std::min(cols - 1, peak.col + window);

    double scale = 1.0;
    if (normalize) {
        double m = 0.0;
        for (int r = r0; r <= r1; ++r)
            for (int c = c0; c <= c1; ++c)
                m = std::max(m, std::abs(s.scores(r, c)));
        if (m > 0.0) scale = 1.0 / m;
    }

    const double top = peak.score * scale;
    double wsum = 0.0, rsum = 0.0, csum = 0.0;
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            const double w = std::exp(gain * (s.scores(r, c) * scale - top));
            wsum += w;
            rsum += w * s.row_coords[r];
            csum += w * s.col_coords[c];
        }
    }
    return {rsum / wsum, csum / wsum};
}

std::pair<double, CorrelationSurface> estimate_rotation(const ScanGrid& f,
                                                        const ScanGrid& g,
                                                        const MatchConfig& cfg) {
    if (!(f.spec == g.spec))
        throw std::invalid_argument("estimate_rotation: grid specs differ");
    if (f.spec.n != cfg.n_xy)
        throw std::invalid_argument("estimate_rotation: grid size != config n_xy");

    if (cfg.n_theta == 1) {
        // Degenerate single-candidate grid: theta = 0 by construction.
        CorrelationSurface s;
        s.scores = Array2D(1, 1, 0.0);
        s.row_coords = {0.0};
        s.col_coords = {0.0};
        return {0.0, s};
    }

    const int n = f.spec.n;
    const ScanGrid w = hanning_window(f.spec);
    Array2D fw(n, n), gw(n, n);
    for (std::size_t i = 0; i < fw.size(); ++i) {
        fw[i] = f.values[i] * w.values[i];
        gw[i] = g.values[i] * w.values[i];
    }

    const Array2D band = bandpass_mask(n, cfg.band_lo, cfg.band_hi);
    Array2D af = magnitude(dft2(fw));
    Array2D ag = magnitude(dft2(gw));
    for (std::size_t i = 0; i < af.size(); ++i) {
        af[i] *= band[i];
        ag[i] *= band[i];
    }

    const double span = cfg.n_theta * cfg.delta_theta;
    const Array2D pf = cart2pol(af, cfg.n_theta, cfg.n_radius, span);
    const Array2D pg = cart2pol(ag, cfg.n_theta, cfg.n_radius, span);
    const CorrelationSurface c2 =
        xcorr(wrap_pad(pf, cfg.pad_angle), wrap_pad(pg, cfg.pad_angle));

    // Mean over all radial lags, then crop the angular padding. The padded
    // array has n_theta + 2*pad rows, so the surviving angular lags are
    // exactly (k - n_theta/2) * delta_theta for k in [0, n_theta).
    const int nr = static_cast<int>(c2.scores.cols());
    CorrelationSurface s;
    s.scores = Array2D(cfg.n_theta, 1);
    s.row_coords.resize(cfg.n_theta);
    s.col_coords = {0.0};
    for (int k = 0; k < cfg.n_theta; ++k) {
        double acc = 0.0;
        for (int j = 0; j < nr; ++j) acc += c2.scores(k + cfg.pad_angle, j);
        s.scores(k, 0) = acc / nr;
        s.row_coords[k] = (k - cfg.n_theta / 2) * cfg.delta_theta;
    }

    const double theta =
        soft_argmax(s, cfg.t_theta, cfg.softargmax_window, cfg.normalize_scores)
            .first;
    return {theta, std::move(s)};
}

std::pair<Vec2, CorrelationSurface> estimate_translation(const ScanGrid& f,
                                                         const ScanGrid& g,
                                                         double theta,
                                                         const MatchConfig& cfg) {
    if (!(f.spec == g.spec))
        throw std::invalid_argument("estimate_translation: grid specs differ");
    const int n = f.spec.n;
    const double delta = f.spec.delta;

    const ScanGrid gr = rotate_bilinear(g, -theta);
    const int big = next_fast_size(2 * n - 1);
    const CorrelationSurface raw =
        xcorr(zero_pad(f.values, big), zero_pad(gr.values, big));

    // Keep the central n x n lags (the physical search extent) and flip the
    // row axis into world orientation: row coordinate = t_y', increasing.
    const int h = big / 2;
    const int half = (n - 1) / 2;
    CorrelationSurface s;
    s.scores = Array2D(n, n);
    s.row_coords.resize(n);
    s.col_coords.resize(n);
    for (int i = 0; i < n; ++i) {
        const int off_y = i - half;
        for (int j = 0; j < n; ++j) s.scores(i, j) = raw.scores(h - off_y, h + (j - half));
        s.row_coords[i] = off_y * delta;
    }
    for (int j = 0; j < n; ++j) s.col_coords[j] = (j - half) * delta;

    const auto [ty, tx] =
        soft_argmax(s, cfg.t_xy, cfg.softargmax_window, cfg.normalize_scores);
    return {rotate_vec(theta, Vec2{tx, ty}), std::move(s)};
}

MatchResult scan_match(const ScanGrid& f, const ScanGrid& g,
                       const MatchConfig& cfg) {
    validate(cfg);
    if (!all_finite(f.values) || !all_finite(g.values))
        throw std::invalid_argument("scan_match: input grids contain non-finite values");

    MatchResult out;
    auto [theta, ts] = estimate_rotation(f, g, cfg);
    auto [t, xs] = estimate_translation(f, g, theta, cfg);
    out.pose = Pose2D{normalize_angle(theta), t.x, t.y};
    out.theta_surface = std::move(ts);
    out.xy_surface = std::move(xs);

    const HardPeak tp = hard_argmax(out.theta_surface.scores);
    out.diagnostics.theta_peak = tp.score;
    out.diagnostics.theta_hard = out.theta_surface.row_coords[tp.row];
    const HardPeak xp = hard_argmax(out.xy_surface.scores);
    out.diagnostics.xy_peak = xp.score;
    out.diagnostics.xy_hard = Vec2{out.xy_surface.col_coords[xp.col],
                                   out.xy_surface.row_coords[xp.row]};
    return out;
}

MatchResult scan_match(const ScanGrid& f, const ScanGrid& g,
                       const MatchConfig& cfg, const MaskGrid& mask_f,
                       const MaskGrid& mask_g) {
    return scan_match(apply_mask(f, mask_f), apply_mask(g, mask_g), cfg);
}

}  // namespace fscan
