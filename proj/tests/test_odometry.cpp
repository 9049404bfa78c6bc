#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fscan/odometry.hpp"
#include "fscan/rng.hpp"

using namespace fscan;

namespace {

std::vector<Pose2D> random_relatives(int k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Pose2D> rels;
    for (int i = 0; i < k; ++i)
        rels.push_back(Pose2D{rng.uniform(-0.3, 0.3), rng.uniform(0.2, 2.0),
                              rng.uniform(-0.5, 0.5)});
    return rels;
}

}  // namespace

TEST_SUITE("odometry") {

TEST_CASE("integrate: identity relatives stand still") {
    const std::vector<Pose2D> rels(5, Pose2D::identity());
    const Trajectory t = integrate(rels);
    REQUIRE(t.poses.size() == 6);
    for (const auto& p : t.poses) {
        CHECK(p.theta == 0.0);
        CHECK(p.tx == 0.0);
        CHECK(p.ty == 0.0);
    }
    CHECK(t.cumulative_distance.back() == 0.0);
}

TEST_CASE("integrate: constant forward motion is a straight line") {
    const std::vector<Pose2D> rels(10, Pose2D{0.0, 1.0, 0.0});
    const Trajectory t = integrate(rels);
    REQUIRE(t.poses.size() == 11);
    for (std::size_t k = 0; k < t.poses.size(); ++k) {
        CHECK(t.poses[k].tx == doctest::Approx(static_cast<double>(k)));
        CHECK(t.poses[k].ty == doctest::Approx(0.0));
        CHECK(t.cumulative_distance[k] ==
              doctest::Approx(static_cast<double>(k)));
    }
}

TEST_CASE("difference inverts integrate") {
    const std::vector<Pose2D> rels = random_relatives(40, 11);
    const Trajectory t = integrate(rels);
    const std::vector<Pose2D> back = difference(t);
    REQUIRE(back.size() == rels.size());
    for (std::size_t k = 0; k < rels.size(); ++k) {
        CHECK(std::abs(normalize_angle(back[k].theta - rels[k].theta)) < 1e-10);
        CHECK(back[k].tx == doctest::Approx(rels[k].tx).epsilon(1e-10));
        CHECK(back[k].ty == doctest::Approx(rels[k].ty).epsilon(1e-10));
    }
    // and integrating the differences reproduces the absolutes
    const Trajectory again = integrate(back);
    for (std::size_t k = 0; k < t.poses.size(); ++k) {
        CHECK(again.poses[k].tx == doctest::Approx(t.poses[k].tx).epsilon(1e-10));
        CHECK(again.poses[k].ty == doctest::Approx(t.poses[k].ty).epsilon(1e-10));
    }
}

TEST_CASE("from_poses recomputes chord distance") {
    std::vector<Pose2D> poses{Pose2D{0, 0, 0}, Pose2D{0.5, 3.0, 4.0},
                              Pose2D{-0.25, 3.0, 9.0}};
    const Trajectory t = from_poses(poses);
    REQUIRE(t.cumulative_distance.size() == 3);
    CHECK(t.cumulative_distance[0] == 0.0);
    CHECK(t.cumulative_distance[1] == doctest::Approx(5.0));
    CHECK(t.cumulative_distance[2] == doctest::Approx(10.0));
}

TEST_CASE("kitti_drift: perfect estimate scores zero") {
    const Trajectory t = integrate(std::vector<Pose2D>(300, Pose2D{0.0, 1.0, 0.0}));
    const auto report = kitti_drift(t, t, {100.0, 200.0});
    REQUIRE(report.has_value());
    CHECK(report->translation_percent == doctest::Approx(0.0));
    CHECK(report->rotation_deg_per_km == doctest::Approx(0.0));
    CHECK(report->segments > 0);
}

TEST_CASE("kitti_drift: constant translation bias has a closed form") {
    // truth: 1 m/frame straight line; estimate: (1 + b) m/frame.
    // A segment of true length L spans L frames and accumulates L*b extra
    // metres -> translation error = 100*b percent for every segment.
    const double b = 0.03;
    const int frames = 501;
    const Trajectory truth =
        integrate(std::vector<Pose2D>(frames - 1, Pose2D{0.0, 1.0, 0.0}));
    const Trajectory est =
        integrate(std::vector<Pose2D>(frames - 1, Pose2D{0.0, 1.0 + b, 0.0}));
    for (const auto avg : {DriftAveraging::pooled, DriftAveraging::per_length}) {
        const auto report =
            kitti_drift(est, truth, default_segment_lengths(), 1, avg);
        REQUIRE(report.has_value());
        CHECK(report->translation_percent == doctest::Approx(100.0 * b).epsilon(1e-9));
        CHECK(report->rotation_deg_per_km == doctest::Approx(0.0));
    }
}

TEST_CASE("kitti_drift: invariant to a global rigid transform") {
    const std::vector<Pose2D> rels = random_relatives(400, 77);
    std::vector<Pose2D> est_rels = rels;
    Rng rng(5);
    for (auto& r : est_rels) {
        r.theta += 0.002 * rng.normal();
        r.tx += 0.02 * rng.normal();
        r.ty += 0.02 * rng.normal();
    }
    const Trajectory truth = integrate(rels);
    const Trajectory est = integrate(est_rels);
    const auto base = kitti_drift(est, truth, {50.0, 100.0});
    REQUIRE(base.has_value());

    const Pose2D world{0.7, 100.0, -40.0};
    auto moved = [&](const Trajectory& t) {
        std::vector<Pose2D> poses;
        for (const auto& p : t.poses) poses.push_back(compose(world, p));
        Trajectory out = from_poses(poses);
        out.cumulative_distance = t.cumulative_distance;
        return out;
    };
    const auto shifted = kitti_drift(moved(est), moved(truth), {50.0, 100.0});
    REQUIRE(shifted.has_value());
    CHECK(shifted->translation_percent ==
          doctest::Approx(base->translation_percent).epsilon(1e-9));
    CHECK(shifted->rotation_deg_per_km ==
          doctest::Approx(base->rotation_deg_per_km).epsilon(1e-9));
    CHECK(shifted->segments == base->segments);
}

TEST_CASE("kitti_drift: doubling the error at least doubles the drift") {
    const int frames = 400;
    const Trajectory truth =
        integrate(std::vector<Pose2D>(frames - 1, Pose2D{0.0, 1.0, 0.0}));
    Rng rng(9);
    std::vector<Pose2D> small_err, big_err;
    for (int i = 0; i < frames - 1; ++i) {
        const double ex = 0.01 * rng.normal(), ey = 0.01 * rng.normal();
        small_err.push_back(Pose2D{0.0, 1.0 + ex, ey});
        big_err.push_back(Pose2D{0.0, 1.0 + 2 * ex, 2 * ey});
    }
    const auto small_report =
        kitti_drift(integrate(small_err), truth, {100.0});
    const auto big_report = kitti_drift(integrate(big_err), truth, {100.0});
    REQUIRE(small_report.has_value());
    REQUIRE(big_report.has_value());
    CHECK(big_report->translation_percent >=
          2.0 * small_report->translation_percent * 0.999);
}

TEST_CASE("kitti_drift: stride subsamples the segment starts") {
    const Trajectory t = integrate(std::vector<Pose2D>(200, Pose2D{0.0, 1.0, 0.0}));
    const auto dense = kitti_drift(t, t, {50.0}, 1);
    const auto sparse = kitti_drift(t, t, {50.0}, 10);
    REQUIRE(dense.has_value());
    REQUIRE(sparse.has_value());
    CHECK(dense->segments > sparse->segments);
    CHECK(sparse->segments >= dense->segments / 10);
}

TEST_CASE("kitti_drift: too-short trajectories signal emptiness, not errors") {
    const Trajectory t = integrate(std::vector<Pose2D>(5, Pose2D{0.0, 1.0, 0.0}));
    const auto report = kitti_drift(t, t, {100.0});
    CHECK(!report.has_value());
}

TEST_CASE("kitti_drift input validation") {
    const Trajectory a = integrate(std::vector<Pose2D>(10, Pose2D{0.0, 1.0, 0.0}));
    const Trajectory b = integrate(std::vector<Pose2D>(11, Pose2D{0.0, 1.0, 0.0}));
    CHECK_THROWS_AS(kitti_drift(a, b, {5.0}), std::invalid_argument);
    CHECK_THROWS_AS(kitti_drift(a, a, {5.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(kitti_drift(a, a, {-5.0}), std::invalid_argument);
    const Trajectory one = integrate({});
    CHECK_THROWS_AS(kitti_drift(one, one, {5.0}), std::invalid_argument);
}

TEST_CASE("averaging orders differ when lengths are unevenly populated") {
    // short trajectory: many 10 m segments, few 50 m segments with a large
    // error localized near the end -> pooled and per-length disagree
    const int frames = 101;
    std::vector<Pose2D> rels(frames - 1, Pose2D{0.0, 1.0, 0.0});
    std::vector<Pose2D> est_rels = rels;
    for (int i = 80; i < frames - 1; ++i) est_rels[i].ty = 0.3;
    const Trajectory truth = integrate(rels);
    const Trajectory est = integrate(est_rels);
    const auto pooled =
        kitti_drift(est, truth, {10.0, 50.0}, 1, DriftAveraging::pooled);
    const auto per_length =
        kitti_drift(est, truth, {10.0, 50.0}, 1, DriftAveraging::per_length);
    REQUIRE(pooled.has_value());
    REQUIRE(per_length.has_value());
    CHECK(pooled->translation_percent !=
          doctest::Approx(per_length->translation_percent).epsilon(1e-6));
}

}  // TEST_SUITE
