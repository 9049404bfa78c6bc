#pragma once

#include <optional>
#include <vector>

#include "fscan/geometry.hpp"

namespace fscan {

struct Trajectory {
    std::vector<Pose2D> poses;                // absolute; poses[0] = identity
    std::vector<double> cumulative_distance;  // metres, non-decreasing
    std::vector<double> timestamps;           // optional: empty or per-frame
};

/// k relative poses -> k+1 absolute poses starting at the identity;
/// distance accumulates the per-step translation norm.
Trajectory integrate(const std::vector<Pose2D>& relatives);

/// Inverse of integrate: relative[k] = inverse(poses[k]) o poses[k+1].
std::vector<Pose2D> difference(const Trajectory& t);

/// Wrap existing absolute poses (recomputes cumulative distance).
Trajectory from_poses(std::vector<Pose2D> poses);

struct DriftReport {
    double translation_percent = 0.0;
    double rotation_deg_per_km = 0.0;
    int segments = 0;
};

enum class DriftAveraging {
    pooled,      // average over every (start, length) segment in one pool
    per_length,  // average within each length first, then across lengths
};

/// Segment-wise relative pose error, translation normalized by segment
/// length (percent) and rotation by distance (deg/km), averaged over all
/// start frames (stride in frames) and all requested lengths. Trajectories
/// must have equal frame counts >= 2 (mismatch throws); returns nullopt when
/// no segment fits. Distances are measured along the ground truth.
std::optional<DriftReport> kitti_drift(
    const Trajectory& estimate, const Trajectory& truth,
    const std::vector<double>& segment_lengths, int stride = 1,
    DriftAveraging averaging = DriftAveraging::pooled);

/// The customary 100 m .. 800 m ladder.
std::vector<double> default_segment_lengths();

}  // namespace fscan
