#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fscan/bench.hpp"
#include "fscan/io.hpp"
#include "fscan/matcher.hpp"
#include "fscan/odometry.hpp"
#include "fscan/oracle.hpp"
#include "fscan/parallel.hpp"
#include "fscan/synth.hpp"
#include "fscan/verify.hpp"

namespace fs = std::filesystem;

namespace {

// Defaults adapted to the scans at hand when no config file is given.
fscan::MatchConfig config_for(const std::string& path, const fscan::GridSpec& spec) {
    if (!path.empty()) return fscan::read_match_config(path);
    fscan::MatchConfig cfg;
    cfg.n_xy = spec.n;
    cfg.delta_xy = spec.delta;
    cfg.n_radius = 0;
    fscan::finalize(cfg);
    return cfg;
}

int cmd_match(const std::string& path_a, const std::string& path_b,
              const std::string& config_path, const std::string& mask_a_path,
              const std::string& mask_b_path, const std::string& dump_dir) {
    const fscan::ScanGrid a = fscan::read_scan(path_a);
    const fscan::ScanGrid b = fscan::read_scan(path_b);
    const fscan::MatchConfig cfg = config_for(config_path, a.spec);

    fscan::MatchResult result;
    if (!mask_a_path.empty()) {
        const fscan::ScanGrid ma = fscan::read_scan(mask_a_path);
        const fscan::ScanGrid mb = fscan::read_scan(mask_b_path);
        result = fscan::scan_match(a, b, cfg, fscan::MaskGrid(ma.spec, ma.values),
                                   fscan::MaskGrid(mb.spec, mb.values));
    } else {
        result = fscan::scan_match(a, b, cfg);
    }

    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        fscan::write_surface_csv((fs::path(dump_dir) / "theta_surface.csv").string(),
                                 result.theta_surface);
        fscan::write_surface_csv((fs::path(dump_dir) / "xy_surface.csv").string(),
                                 result.xy_surface);
    }
    std::cout << fscan::format_pose_csv(result.pose) << "\n";
    return 0;
}

int cmd_synth(const std::string& out_dir, const std::string& scene_path,
              int count, double step_x, double step_y, double step_theta,
              double jitter_xy, double jitter_theta, int n, double delta,
              std::uint64_t seed, double speckle, double ring, double dropout) {
    const fscan::GridSpec spec{n, delta};
    fscan::validate(spec);

    fscan::Scene scene;
    if (!scene_path.empty()) {
        scene = fscan::read_scene(scene_path);
    } else {
        const double sweep =
            count * fscan::Vec2{step_x, step_y}.norm() + std::abs(step_x) + std::abs(step_y);
        scene = sweep > 0.3 * spec.extent()
                    ? fscan::corridor_scene(spec, sweep, seed)
                    : fscan::default_scene(spec, seed);
        scene.noise.speckle_sigma = speckle;
        scene.noise.ring_amplitude = ring;
        scene.noise.dropout_prob = dropout;
    }

    fscan::MotionModel motion;
    motion.step = fscan::Pose2D{step_theta, step_x, step_y};
    motion.jitter_xy = jitter_xy;
    motion.jitter_theta = jitter_theta;

    const fscan::TrajectorySample sample =
        fscan::make_trajectory(scene, motion, count, spec);

    fs::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "scan_%05d.fscn", i);
        fscan::write_scan((fs::path(out_dir) / name).string(), sample.scans[i]);
    }
    fscan::write_trajectory_csv((fs::path(out_dir) / "gt.csv").string(),
                                sample.poses);
    fscan::write_scene((fs::path(out_dir) / "scene.txt").string(), scene);
    std::cout << "wrote " << count << " scans to " << out_dir << "\n";
    return 0;
}

int cmd_odometry(const std::string& scan_dir, const std::string& config_path,
                 const std::string& gt_path, const std::string& out_path,
                 const std::string& report_path, std::vector<double> lengths,
                 int stride, const std::string& averaging) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(scan_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".fscn")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.size() < 2) {
        std::cerr << "odometry: need at least 2 scans, found " << files.size()
                  << "\n";
        return 1;
    }

    std::vector<fscan::ScanGrid> scans;
    scans.reserve(files.size());
    for (const auto& f : files) scans.push_back(fscan::read_scan(f));
    const fscan::MatchConfig cfg = config_for(config_path, scans[0].spec);

    // Pairwise matches are independent; output order is fixed by index.
    std::vector<fscan::Pose2D> rels(scans.size() - 1);
    fscan::parallel_for(0, static_cast<int>(rels.size()), fscan::thread_budget(),
                        [&](int k) {
                            const fscan::MatchResult m =
                                fscan::scan_match(scans[k], scans[k + 1], cfg);
                            rels[k] = fscan::inverse(m.pose);
                        });

    const fscan::Trajectory est = fscan::integrate(rels);
    fscan::write_trajectory_csv(out_path, est.poses);

    if (gt_path.empty()) return 0;
    const fscan::Trajectory truth =
        fscan::from_poses(fscan::read_trajectory_csv(gt_path));
    if (truth.poses.size() != est.poses.size()) {
        std::cerr << "odometry: ground truth has " << truth.poses.size()
                  << " rows for " << est.poses.size() << " scans\n";
        return 1;
    }
    if (lengths.empty()) lengths = fscan::default_segment_lengths();
    const auto drift = fscan::kitti_drift(est, truth, lengths, stride,
                                          averaging == "per-length"
                                              ? fscan::DriftAveraging::per_length
                                              : fscan::DriftAveraging::pooled);
    if (!drift) {
        std::cout << "segments 0 (trajectory shorter than the smallest segment)\n";
        return 0;
    }
    std::printf("translation_percent %.6g\nrotation_deg_per_km %.6g\nsegments %d\n",
                drift->translation_percent, drift->rotation_deg_per_km,
                drift->segments);
    if (!report_path.empty()) {
        char row[160];
        std::snprintf(row, sizeof(row), "translation_percent,rotation_deg_per_km,segments\n%.17g,%.17g,%d\n",
                      drift->translation_percent, drift->rotation_deg_per_km,
                      drift->segments);
        fscan::write_text_file(report_path, row);
    }
    return 0;
}

int cmd_bench(const std::string& workload, const std::string& config_path,
              int passes, int burn_in, std::uint64_t seed,
              const std::string& out_path) {
    fscan::MatchConfig cfg;
    if (!config_path.empty()) cfg = fscan::read_match_config(config_path);
    const fscan::BenchReport report =
        fscan::run_bench(workload, cfg, passes, burn_in, seed);
    const std::string text =
        fscan::bench_csv_header() + "\n" + fscan::to_csv_row(report) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        fscan::write_text_file(out_path, text);
    return 0;
}

int cmd_verify(const std::string& suite) {
    fscan::VerifyReport report;
    if (suite == "fourier" || suite == "all") {
        const fscan::VerifyReport r = fscan::verify_fourier_suite();
        report.items.insert(report.items.end(), r.items.begin(), r.items.end());
    }
    if (suite == "oracle" || suite == "all") {
        const fscan::VerifyReport r = fscan::verify_oracle_suite();
        report.items.insert(report.items.end(), r.items.begin(), r.items.end());
    }
    for (const auto& item : report.items)
        std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.name << ": "
                  << item.detail << "\n";
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier scan matching for dense 2D radar-style grids"};
    app.require_subcommand(1);

    // match
    auto* match = app.add_subcommand("match", "Estimate the pose between two scans");
    std::string match_a, match_b, match_cfg, match_ma, match_mb, match_dump;
    match->add_option("scan_a", match_a, "Reference scan (.fscn)")
        ->required()
        ->check(CLI::ExistingFile);
    match->add_option("scan_b", match_b, "Moved scan (.fscn)")
        ->required()
        ->check(CLI::ExistingFile);
    match->add_option("--config", match_cfg, "Matcher config file")
        ->check(CLI::ExistingFile);
    match->add_option("--mask-a", match_ma, "Mask grid for scan A (.fscn)")
        ->check(CLI::ExistingFile);
    match->add_option("--mask-b", match_mb, "Mask grid for scan B (.fscn)")
        ->check(CLI::ExistingFile)
        ->needs(match->get_option("--mask-a"));
    match->get_option("--mask-a")->needs(match->get_option("--mask-b"));
    match->add_option("--dump-surfaces", match_dump,
                      "Directory for correlation surface CSVs");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate synthetic scans with ground truth");
    std::string synth_out, synth_scene;
    int synth_count = 1, synth_n = 255;
    double synth_sx = 0.0, synth_sy = 0.0, synth_st = 0.0;
    double synth_jxy = 0.0, synth_jt = 0.0, synth_delta = 0.4;
    double synth_speckle = 0.02, synth_ring = 0.0, synth_dropout = 0.0;
    std::uint64_t synth_seed = 0;
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--scene", synth_scene, "Scene file (otherwise generated from --seed)")
        ->check(CLI::ExistingFile);
    synth->add_option("--count", synth_count, "Number of frames")->check(CLI::PositiveNumber);
    synth->add_option("--step-x", synth_sx, "Per-frame x step, metres");
    synth->add_option("--step-y", synth_sy, "Per-frame y step, metres");
    synth->add_option("--step-theta", synth_st, "Per-frame rotation, radians");
    synth->add_option("--jitter-xy", synth_jxy, "Translation jitter stddev, metres");
    synth->add_option("--jitter-theta", synth_jt, "Rotation jitter stddev, radians");
    synth->add_option("--n", synth_n, "Grid side length (odd)");
    synth->add_option("--delta", synth_delta, "Metres per cell");
    synth->add_option("--seed", synth_seed, "Master seed");
    synth->add_option("--speckle", synth_speckle, "Speckle noise sigma (generated scenes)");
    synth->add_option("--ring", synth_ring, "Ring artefact amplitude (generated scenes)");
    synth->add_option("--dropout", synth_dropout, "Dropout probability (generated scenes)");

    // odometry
    auto* odom = app.add_subcommand("odometry", "Chain pairwise matches over a scan directory");
    std::string odom_dir, odom_cfg, odom_gt, odom_out, odom_report;
    std::vector<double> odom_lengths;
    int odom_stride = 1;
    std::string odom_avg = "pooled";
    odom->add_option("--scans", odom_dir, "Directory of .fscn files")
        ->required()
        ->check(CLI::ExistingDirectory);
    odom->add_option("--config", odom_cfg, "Matcher config file")->check(CLI::ExistingFile);
    odom->add_option("--gt", odom_gt, "Ground-truth trajectory CSV")->check(CLI::ExistingFile);
    odom->add_option("--out", odom_out, "Estimated trajectory CSV")->required();
    odom->add_option("--report", odom_report, "Drift report CSV");
    odom->add_option("--lengths", odom_lengths, "Segment lengths, metres");
    odom->add_option("--stride", odom_stride, "Segment start stride, frames")
        ->check(CLI::PositiveNumber);
    odom->add_option("--averaging", odom_avg, "pooled | per-length")
        ->check(CLI::IsMember({"pooled", "per-length"}));

    // bench
    auto* bench = app.add_subcommand("bench", "Time a workload with burn-in");
    std::string bench_workload, bench_cfg, bench_out;
    int bench_passes = 500, bench_burn = 50;
    std::uint64_t bench_seed = 0;
    bench->add_option("--workload", bench_workload, "matcher | oracle | noop")
        ->required()
        ->check(CLI::IsMember({"matcher", "oracle", "noop"}));
    bench->add_option("--config", bench_cfg, "Matcher config file")->check(CLI::ExistingFile);
    bench->add_option("--passes", bench_passes, "Timed passes (>= 100)");
    bench->add_option("--burn-in", bench_burn, "Discarded warmup passes (>= 10)");
    bench->add_option("--seed", bench_seed, "Noise seed");
    bench->add_option("--out", bench_out, "Write CSV here instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the numerical property suites");
    std::string verify_suite;
    verify->add_option("--suite", verify_suite, "fourier | oracle | all")
        ->required()
        ->check(CLI::IsMember({"fourier", "oracle", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (match->parsed())
            return cmd_match(match_a, match_b, match_cfg, match_ma, match_mb,
                             match_dump);
        if (synth->parsed())
            return cmd_synth(synth_out, synth_scene, synth_count, synth_sx,
                             synth_sy, synth_st, synth_jxy, synth_jt, synth_n,
                             synth_delta, synth_seed, synth_speckle, synth_ring,
                             synth_dropout);
        if (odom->parsed())
            return cmd_odometry(odom_dir, odom_cfg, odom_gt, odom_out,
                                odom_report, odom_lengths, odom_stride, odom_avg);
        if (bench->parsed())
            return cmd_bench(bench_workload, bench_cfg, bench_passes, bench_burn,
                             bench_seed, bench_out);
        if (verify->parsed()) return cmd_verify(verify_suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
