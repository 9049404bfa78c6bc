#include "fscan/odometry.hpp"

#include <cmath>
#include <stdexcept>

namespace fscan {

Trajectory integrate(const std::vector<Pose2D>& relatives) {
    Trajectory t;
    t.poses.reserve(relatives.size() + 1);
    t.cumulative_distance.reserve(relatives.size() + 1);
    t.poses.push_back(Pose2D::identity());
    t.cumulative_distance.push_back(0.0);
    for (const auto& rel : relatives) {
        t.poses.push_back(compose(t.poses.back(), rel));
        t.cumulative_distance.push_back(t.cumulative_distance.back() +
                                        rel.translation().norm());
    }
    return t;
}

std::vector<Pose2D> difference(const Trajectory& t) {
    std::vector<Pose2D> rel;
    if (t.poses.size() < 2) return rel;
    rel.reserve(t.poses.size() - 1);
    for (std::size_t k = 0; k + 1 < t.poses.size(); ++k)
        rel.push_back(compose(inverse(t.poses[k]), t.poses[k + 1]));
    return rel;
}

Trajectory from_poses(std::vector<Pose2D> poses) {
    Trajectory t;
    t.poses = std::move(poses);
    t.cumulative_distance.reserve(t.poses.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < t.poses.size(); ++k) {
        if (k > 0)
            acc += (t.poses[k].translation() - t.poses[k - 1].translation()).norm();
        t.cumulative_distance.push_back(acc);
    }
    return t;
}

std::optional<DriftReport> kitti_drift(const Trajectory& estimate,
                                       const Trajectory& truth,
                                       const std::vector<double>& segment_lengths,
                                       int stride, DriftAveraging averaging) {
    const std::size_t frames = truth.poses.size();
    if (estimate.poses.size() != frames)
        throw std::invalid_argument("kitti_drift: trajectory lengths differ");
    if (frames < 2) throw std::invalid_argument("kitti_drift: need >= 2 frames");
    if (stride < 1) throw std::invalid_argument("kitti_drift: stride must be >= 1");
    if (truth.cumulative_distance.size() != frames)
        throw std::invalid_argument("kitti_drift: truth lacks cumulative distance");

    const auto& dist = truth.cumulative_distance;
    double pooled_t = 0.0, pooled_r = 0.0;
    int pooled_n = 0;
    double perlen_t = 0.0, perlen_r = 0.0;
    int lengths_hit = 0;

    for (double L : segment_lengths) {
        if (!(L > 0.0))
            throw std::invalid_argument("kitti_drift: segment lengths must be positive");
        double sum_t = 0.0, sum_r = 0.0;
        int count = 0;
        std::size_t j = 0;
        for (std::size_t i = 0; i < frames; i += stride) {
            if (j < i) j = i;
            while (j < frames && dist[j] - dist[i] < L) ++j;
            if (j == frames) break;  // no later start can reach L either
            const Pose2D rel_est =
                compose(inverse(estimate.poses[i]), estimate.poses[j]);
            const Pose2D rel_gt = compose(inverse(truth.poses[i]), truth.poses[j]);
            const Pose2D err = compose(inverse(rel_gt), rel_est);
            const double seg = dist[j] - dist[i];
            sum_t += err.translation().norm() / seg * 100.0;
            sum_r += std::abs(err.theta) * (180.0 / kPi) / (seg / 1000.0);
            ++count;
        }
        if (count > 0) {
            pooled_t += sum_t;
            pooled_r += sum_r;
            pooled_n += count;
            perlen_t += sum_t / count;
            perlen_r += sum_r / count;
            ++lengths_hit;
        }
    }

    if (pooled_n == 0) return std::nullopt;
    DriftReport report;
    report.segments = pooled_n;
    if (averaging == DriftAveraging::pooled) {
        report.translation_percent = pooled_t / pooled_n;
        report.rotation_deg_per_km = pooled_r / pooled_n;
    } else {
        report.translation_percent = perlen_t / lengths_hit;
        report.rotation_deg_per_km = perlen_r / lengths_hit;
    }
    return report;
}

std::vector<double> default_segment_lengths() {
    return {100, 200, 300, 400, 500, 600, 700, 800};
}

}  // namespace fscan
