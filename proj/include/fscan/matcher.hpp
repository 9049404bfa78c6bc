#pragma once

#include <utility>

#include "fscan/grid.hpp"
#include "fscan/spectral.hpp"

namespace fscan {

/// Knobs of the decoupled matcher. delta_theta is the angular bin width of
/// both the polar resampling and the recovered-angle grid; the search span is
/// n_theta * delta_theta (at defaults, the full +/- pi/2).
struct MatchConfig {
    int n_theta = 733;
    double delta_theta = kPi / 733.0;
    double t_theta = 2.0;  // softmax gain of the angular stage
    int n_xy = 255;
    double delta_xy = 0.4;  // metres per cell
    double t_xy = 1.0;      // softmax gain of the translation stage
    double band_lo = 0.03;  // annular band-pass, fractions of Nyquist
    double band_hi = 0.75;
    int n_radius = 128;          // polar radial bins; <= 0 -> ceil(n_xy / 2)
    int pad_angle = 92;          // angular wrap padding; < 0 -> ceil(n_theta / 8)
    int softargmax_window = 16;  // half-width in bins around the hard peak
    bool normalize_scores = true;
};

/// Resolve derived defaults: n_radius from n_xy, pad_angle from n_theta.
void finalize(MatchConfig& cfg);
void validate(const MatchConfig& cfg);

struct MatchDiagnostics {
    double theta_peak = 0.0;  // raw score at the angular hard argmax
    double theta_hard = 0.0;  // radians at that bin
    double xy_peak = 0.0;     // raw score at the translation hard argmax
    Vec2 xy_hard{0.0, 0.0};   // metres, lag before back-rotation
};

struct MatchResult {
    Pose2D pose;
    CorrelationSurface theta_surface;  // n_theta x 1, row coords in radians
    CorrelationSurface xy_surface;     // rows: t_y' (m), cols: t_x' (m)
    MatchDiagnostics diagnostics;
};

/// Windowed temperature-controlled soft argmax. Scores within +/- window
/// bins of the hard argmax (clamped to the surface) are max-shifted, scaled
/// by gain, softmaxed, and used to weight the bin coordinates. When
/// normalize is set the windowed scores are first divided by their max
/// absolute value so the gain acts on a unit scale. Returns (row coordinate,
/// col coordinate). Ties at the hard argmax break toward the lowest linear
/// index.
std::pair<double, double> soft_argmax(const CorrelationSurface& s, double gain,
                                      int window, bool normalize = true);

/// Angular stage: window, transform, band-pass, magnitude, polar resample,
/// wrap-pad, correlate, reduce over radial lags, soft-argmax over the theta
/// grid. Requires f.spec == g.spec and f.spec.n == cfg.n_xy.
std::pair<double, CorrelationSurface> estimate_rotation(const ScanGrid& f,
                                                        const ScanGrid& g,
                                                        const MatchConfig& cfg);

/// Translation stage: de-rotate g by theta, zero-pad both grids, correlate,
/// soft-argmax over the central n_xy x n_xy lag window, then rotate the lag
/// back into the frame of g.
std::pair<Vec2, CorrelationSurface> estimate_translation(const ScanGrid& f,
                                                         const ScanGrid& g,
                                                         double theta,
                                                         const MatchConfig& cfg);

/// Full pipeline; returns the pose p with f(x) ~= g(apply(p, x)).
MatchResult scan_match(const ScanGrid& f, const ScanGrid& g,
                       const MatchConfig& cfg);
MatchResult scan_match(const ScanGrid& f, const ScanGrid& g,
                       const MatchConfig& cfg, const MaskGrid& mask_f,
                       const MaskGrid& mask_g);

}  // namespace fscan
