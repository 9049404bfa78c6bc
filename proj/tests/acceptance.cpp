// Acceptance gate: one [PASS]/[FAIL] line per criterion, non-zero exit if
// any fails. Thresholds are frozen here on purpose — loosening one is a
// behaviour change and should be reviewed as such.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "fscan/bench.hpp"
#include "fscan/io.hpp"
#include "fscan/matcher.hpp"
#include "fscan/odometry.hpp"
#include "fscan/oracle.hpp"
#include "fscan/rng.hpp"
#include "fscan/synth.hpp"
#include "fscan/verify.hpp"

namespace fs = std::filesystem;
using namespace fscan;

namespace {

int g_failures = 0;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

void report(int id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

Pose2D sample_pose(Rng& rng, double theta_max, double trans_max) {
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    const double mag = rng.uniform(0.0, trans_max);
    return Pose2D{rng.uniform(-theta_max, theta_max), mag * std::cos(ang),
                  mag * std::sin(ang)};
}

// --- 1: Fourier invariant suite -------------------------------------------

void criterion_1() {
    Stopwatch sw;
    const VerifyReport r = verify_fourier_suite();
    int ok = 0;
    for (const auto& item : r.items) ok += item.pass;
    const double elapsed = sw.seconds();
    report(1, r.all_pass() && elapsed < 10.0,
           strf("fourier invariants: %d/%zu checks pass, %.1f s (limit 10 s)",
                ok, r.items.size(), elapsed));
}

// --- 2: matcher agrees with the exhaustive search --------------------------

void criterion_2() {
    Stopwatch sw;
    MatchConfig cfg;
    cfg.n_xy = 127;
    cfg.n_theta = 181;
    cfg.delta_theta = kPi / 181.0;
    cfg.n_radius = 0;
    // Half-scale grid, full +/-45 deg envelope: the band floor must clear the
    // DC/window pedestal (0.03 only does on production-sized grids) and the
    // wrap padding must cover every angular lag the sampler can produce, or
    // the circular correlation blends misaligned wrap copies into far lags.
    cfg.band_lo = 0.15;
    cfg.pad_angle = 90;
    finalize(cfg);
    validate(cfg);
    const GridSpec spec{cfg.n_xy, cfg.delta_xy};

    // The oracle searches the matcher's own angular grid, restricted to the
    // sampled range plus margin, so agreement is not confounded by grid
    // mismatch. 50 deg covers the 45 deg sampling envelope with bins to spare.
    std::vector<double> thetas;
    for (int k = 0; k < cfg.n_theta; ++k) {
        const double th = (k - cfg.n_theta / 2) * cfg.delta_theta;
        if (std::abs(th) <= 50.0 * kPi / 180.0) thetas.push_back(th);
    }

    const double tol_theta = 2.0 * cfg.delta_theta;  // one bin + delta_theta
    const double tol_trans = spec.delta;             // one cell
    int agree = 0;
    Rng rng(20260002);
    for (int i = 0; i < 100; ++i) {
        const Scene scene = default_scene(spec, 2000 + i);
        const auto [f, g, truth] =
            make_pair(scene, sample_pose(rng, kPi / 4.0, 0.2 * spec.extent()), spec);
        (void)truth;
        const Pose2D m = scan_match(f, g, cfg).pose;
        const Pose2D o = brute_force_match(f, g, thetas, cfg).pose;
        const double dth = std::abs(normalize_angle(m.theta - o.theta));
        const double dt = (m.translation() - o.translation()).norm();
        if (dth <= tol_theta && dt <= tol_trans) ++agree;
    }
    const double elapsed = sw.seconds();
    report(2, agree >= 95 && elapsed < 300.0,
           strf("oracle equivalence: %d/100 pairs within one bin + delta_theta "
                "and one cell (need >= 95), %.0f s single-threaded (limit 300 s)",
                agree, elapsed));
}

// --- 3: recovery accuracy at full scale ------------------------------------

void criterion_3() {
    MatchConfig cfg;  // stock defaults: 255 cells at 0.4 m, 733 angular bins
    validate(cfg);
    const GridSpec spec{cfg.n_xy, cfg.delta_xy};

    Rng rng(20260003);
    double ss_rot = 0.0, ss_trans = 0.0;
    const int pairs = 200;
    // Consecutive-frame regime: sub-half-cell RMS is a claim about scan-to-
    // scan odometry motion (a few metres, a few degrees), not about the
    // wide-envelope search criterion 2 already exercises against the oracle.
    for (int i = 0; i < pairs; ++i) {
        const Scene scene = default_scene(spec, 3000 + i);
        const auto [f, g, truth] =
            make_pair(scene, sample_pose(rng, 0.15, 5.0), spec);
        const Pose2D est = scan_match(f, g, cfg).pose;
        const double dth = normalize_angle(est.theta - truth.theta);
        ss_rot += dth * dth;
        ss_trans += (est.translation() - truth.translation()).norm_sq();
    }
    const double rms_rot = std::sqrt(ss_rot / pairs);
    const double rms_trans = std::sqrt(ss_trans / pairs);
    const double rot_limit = 2.0 * cfg.delta_theta * 3.0;
    const double trans_limit = 0.5 * spec.delta;

    // Mask-path sanity: sensor-centred ghost rings pull the correlation
    // toward zero lag, so suppressing them must not make estimates worse.
    // Scalar error folds rotation in at a half-extent lever arm.
    const MaskGrid mask = ring_suppression_mask(spec);
    double err_raw = 0.0, err_masked = 0.0;
    const int ring_pairs = 40;
    for (int i = 0; i < ring_pairs; ++i) {
        Scene scene = default_scene(spec, 3500 + i);
        scene.noise.ring_amplitude = 0.6;
        const auto [f, g, truth] =
            make_pair(scene, sample_pose(rng, 0.15, 5.0), spec);
        const auto err = [&](const Pose2D& est) {
            return (est.translation() - truth.translation()).norm() +
                   0.5 * spec.extent() *
                       std::abs(normalize_angle(est.theta - truth.theta));
        };
        err_raw += err(scan_match(f, g, cfg).pose);
        err_masked += err(scan_match(f, g, cfg, mask, mask).pose);
    }
    const double mask_gain = (err_raw - err_masked) / ring_pairs;

    report(3,
           rms_rot <= rot_limit && rms_trans <= trans_limit && mask_gain >= 0.0,
           strf("recovery accuracy: RMS rotation %.5f rad (limit %.5f), RMS "
                "translation %.3f m (limit %.3f), ring-mask gain %+.3f m "
                "(need >= 0)",
                rms_rot, rot_limit, rms_trans, trans_limit, mask_gain));
}

// --- 4: decoupled search beats the exhaustive one ---------------------------

void criterion_4() {
    const int grid[] = {8, 32, 128};
    double ratio[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        MatchConfig cfg;
        cfg.n_xy = 127;
        cfg.n_theta = grid[k];
        cfg.delta_theta = kPi / grid[k];
        cfg.n_radius = 0;
        cfg.pad_angle = -1;
        finalize(cfg);
        const BenchReport m = run_bench("matcher", cfg, 500, 50, 11);
        const BenchReport o = run_bench("oracle", cfg, 500, 50, 11);
        ratio[k] = o.median_ms / m.median_ms;
    }
    const bool fast_enough = ratio[2] >= 10.0;
    const bool monotone =
        ratio[1] >= 0.8 * ratio[0] && ratio[2] >= 0.8 * ratio[1];
    report(4, fast_enough && monotone,
           strf("decoupling speedup: oracle/matcher %.1fx, %.1fx, %.1fx over "
                "n_theta 8/32/128 (need >= 10x at 128, monotone within 20%%)",
                ratio[0], ratio[1], ratio[2]));
}

// --- 5: odometry drift over a long trajectory ------------------------------

void criterion_5() {
    Stopwatch sw;
    // Full-size grids: on half-scale ones the per-frame rotation bias from
    // boundary-window leakage accumulates into several percent of drift.
    const GridSpec spec{255, 0.4};
    MatchConfig cfg;
    cfg.n_xy = spec.n;
    cfg.delta_xy = spec.delta;
    cfg.n_radius = 0;
    finalize(cfg);
    validate(cfg);

    MotionModel motion;
    motion.step = Pose2D{0.0, 4.0, 0.0};  // constant velocity, metres/frame
    const int frames = 500;
    const Scene scene = corridor_scene(
        spec, motion.step.tx * frames + spec.extent(), 4242);
    const TrajectorySample sample = make_trajectory(scene, motion, frames, spec);

    std::vector<Pose2D> rels(frames - 1);
    for (int k = 0; k + 1 < frames; ++k)
        rels[k] = inverse(scan_match(sample.scans[k], sample.scans[k + 1], cfg).pose);

    const Trajectory est = integrate(rels);
    const Trajectory truth = from_poses(sample.poses);
    const auto drift = kitti_drift(est, truth, default_segment_lengths());
    const auto self = kitti_drift(truth, truth, default_segment_lengths());

    // Limits frozen from a pilot of this trajectory: 0.895 % and 2.12 deg/km
    // measured, so 3 % / 15 deg/km holds with a 3x / 7x margin.
    const bool ok = drift.has_value() && self.has_value() &&
                    drift->translation_percent <= 3.0 &&
                    drift->rotation_deg_per_km <= 15.0 &&
                    self->translation_percent == 0.0 &&
                    self->rotation_deg_per_km == 0.0;
    if (drift && self) {
        report(5, ok,
               strf("odometry drift over %d frames: %.3f%% translation (limit "
                    "3%%), %.2f deg/km rotation (limit 15), %d segments; "
                    "exact-truth drift (%g, %g); %.0f s",
                    frames, drift->translation_percent,
                    drift->rotation_deg_per_km, drift->segments,
                    self->translation_percent, self->rotation_deg_per_km,
                    sw.seconds()));
    } else {
        report(5, false, "odometry drift: no segment fit the trajectory");
    }
}

// --- 6: soft-argmax contract ------------------------------------------------

CorrelationSurface bump_1d(int n, double centre, double sigma) {
    CorrelationSurface s;
    s.scores = Array2D(n, 1);
    s.row_coords.resize(n);
    s.col_coords = {0.0};
    for (int k = 0; k < n; ++k) {
        s.row_coords[k] = k;
        const double d = (k - centre) / sigma;
        s.scores(k, 0) = std::exp(-0.5 * d * d);
    }
    return s;
}

CorrelationSurface bump_2d(int n, double cr, double cc, double sigma) {
    CorrelationSurface s;
    s.scores = Array2D(n, n);
    s.row_coords.resize(n);
    s.col_coords.resize(n);
    for (int k = 0; k < n; ++k) s.row_coords[k] = s.col_coords[k] = k;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double d2 = (r - cr) * (r - cr) + (c - cc) * (c - cc);
            s.scores(r, c) = std::exp(-0.5 * d2 / (sigma * sigma));
        }
    return s;
}

void criterion_6() {
    Rng rng(20260006);
    double worst_gap = 0.0;

    // Gain 100 must land within 0.1 bin of the hard argmax on unimodal
    // bumps whose peak sits near a bin (sub-bin offsets up to 0.25).
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 129;
        const int peak = 20 + static_cast<int>(rng.uniform(0.0, 89.0));
        const CorrelationSurface s =
            bump_1d(n, peak + rng.uniform(-0.25, 0.25), rng.uniform(1.0, 2.5));
        int hard = 0;
        for (int k = 1; k < n; ++k)
            if (s.scores(k, 0) > s.scores(hard, 0)) hard = k;
        const auto [row, col] = soft_argmax(s, 100.0, 16, true);
        (void)col;
        worst_gap = std::max(worst_gap, std::abs(row - hard));
    }
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 65;
        const double cr = 20 + rng.uniform(0.0, 25.0);
        const double cc = 20 + rng.uniform(0.0, 25.0);
        const CorrelationSurface s =
            bump_2d(n, std::round(cr) + rng.uniform(-0.25, 0.25),
                    std::round(cc) + rng.uniform(-0.25, 0.25),
                    rng.uniform(1.0, 2.5));
        std::size_t hard = 0;
        for (std::size_t i = 1; i < s.scores.size(); ++i)
            if (s.scores[i] > s.scores[hard]) hard = i;
        const auto [row, col] = soft_argmax(s, 100.0, 16, true);
        worst_gap = std::max(worst_gap, std::abs(row - double(hard / n)));
        worst_gap = std::max(worst_gap, std::abs(col - double(hard % n)));
    }

    // Smoothness at production gains: a 1e-6 score bump moves the output by
    // less than 1e-4 bins.
    const CorrelationSurface base = bump_1d(129, 64.3, 2.0);
    const auto [r0, c0] = soft_argmax(base, 2.0, 16, true);
    (void)c0;
    double worst_move = 0.0;
    for (int off : {-5, -2, 0, 2, 5}) {
        CorrelationSurface s = base;
        s.scores(64 + off, 0) += 1e-6;
        const auto [r1, c1] = soft_argmax(s, 2.0, 16, true);
        (void)c1;
        worst_move = std::max(worst_move, std::abs(r1 - r0));
    }

    report(6, worst_gap <= 0.1 && worst_move <= 1e-4,
           strf("soft-argmax: gain-100 within %.4f bins of hard argmax (limit "
                "0.1), 1e-6 perturbation moves output %.2e bins (limit 1e-4)",
                worst_gap, worst_move));
}

// --- 7: command-line determinism --------------------------------------------

std::string run_cli(const std::string& args, int* exit_code) {
    const std::string cmd = std::string(FSCAN_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    *exit_code = status == -1 ? -1 : WEXITSTATUS(status);
    return out;
}

// Sorted "name\0bytes" concatenation — equal iff the directories are
// byte-identical file for file.
std::string dir_fingerprint(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::string out;
    for (const auto& f : files) {
        out += f.filename().string();
        out += '\0';
        out += read_text_file(f.string());
        out += '\0';
    }
    return out;
}

void criterion_7() {
    const fs::path root = fs::temp_directory_path() / "fscan_acceptance_c7";
    std::error_code ec;
    fs::remove_all(root, ec);

    const std::string synth_args =
        "synth --count 4 --n 65 --step-x 1.2 --step-theta 0.02 "
        "--jitter-xy 0.05 --jitter-theta 0.01 --seed 99 "
        "--ring 0.3 --dropout 0.01 --out ";
    int rc_a = 0, rc_b = 0;
    run_cli(synth_args + (root / "a").string(), &rc_a);
    run_cli(synth_args + (root / "b").string(), &rc_b);
    const bool synth_ok = rc_a == 0 && rc_b == 0 &&
                          dir_fingerprint(root / "a") == dir_fingerprint(root / "b");

    const std::string pair = (root / "a" / "scan_00000.fscn").string() + " " +
                             (root / "a" / "scan_00001.fscn").string();
    int rc_1 = 0, rc_2 = 0;
    const std::string out_1 = run_cli("match " + pair, &rc_1);
    const std::string out_2 = run_cli("match " + pair, &rc_2);
    const bool match_ok =
        rc_1 == 0 && rc_2 == 0 && !out_1.empty() && out_1 == out_2;

    report(7, synth_ok && match_ok,
           strf("determinism: synth reruns %s, match reruns %s",
                synth_ok ? "byte-identical" : "DIFFER",
                match_ok ? "byte-identical" : "DIFFER"));
}

void guarded(int id, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, false, strf("threw: %s", e.what()));
    }
}

}  // namespace

int main() {
    // Timing-sensitive criteria assume the opt-in thread cap is off.
    unsetenv("FSCAN_THREADS");
    guarded(1, criterion_1);
    guarded(2, criterion_2);
    guarded(3, criterion_3);
    guarded(4, criterion_4);
    guarded(5, criterion_5);
    guarded(6, criterion_6);
    guarded(7, criterion_7);
    std::printf("acceptance: %d/7 criteria passed\n", 7 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
