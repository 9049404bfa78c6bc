#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "fscan/grid.hpp"

namespace fscan {

struct Landmark {
    Vec2 position;     // metres, world frame
    double intensity;  // > 0
    double radius;     // metres, Gaussian sigma of the splat; > 0
};

struct NoiseModel {
    double speckle_sigma = 0.02;  // additive Gaussian, power units
    double ring_amplitude = 0.0;  // sensor-centred ghost rings
    double dropout_prob = 0.0;    // per-cell Bernoulli zeroing
};

struct Scene {
    std::vector<Landmark> landmarks;
    NoiseModel noise;
    std::uint64_t rng_seed = 0;
};

void validate(const Scene& scene);

/// Rasterize the scene as seen by a sensor at `pose`: each landmark splats
/// as an isotropic Gaussian at apply(inverse(pose), position); ring
/// artefacts stay fixed in the sensor frame; speckle and dropout draw from
/// the stream (scene.rng_seed, draw); values clamped >= 0. Bit-reproducible
/// for identical arguments.
ScanGrid render(const Scene& scene, const Pose2D& pose, const GridSpec& spec,
                std::uint64_t draw = 0);

/// Scan pair with exact ground truth: f at the identity, g posed so that the
/// matcher's target is exactly `relative_pose`, independent noise draws.
/// Rejects poses outside the search envelope (|theta| < pi/2,
/// |t| < 25% extent).
std::tuple<ScanGrid, ScanGrid, Pose2D> make_pair(const Scene& scene,
                                                 const Pose2D& relative_pose,
                                                 const GridSpec& spec);

struct MotionModel {
    Pose2D step;                // nominal per-frame motion
    double jitter_theta = 0.0;  // stddev, radians
    double jitter_xy = 0.0;     // stddev, metres (per axis)
};

struct TrajectorySample {
    std::vector<ScanGrid> scans;
    std::vector<Pose2D> poses;  // absolute ground truth, poses[0] = identity
};

/// k frames of constant-velocity-plus-jitter motion with exact poses.
TrajectorySample make_trajectory(const Scene& scene, const MotionModel& motion,
                                 int k, const GridSpec& spec);

/// 60 landmarks uniform over the central 70% of the extent, intensity
/// log-uniform in [0.3, 1.0], radius uniform in [1.5, 3] cells.
Scene default_scene(const GridSpec& spec, std::uint64_t seed);

/// Landmarks covering a corridor from x = 0 to x = length at the same
/// density as default_scene, for trajectories that outrun one grid extent.
Scene corridor_scene(const GridSpec& spec, double length, std::uint64_t seed);

/// Weights that zero the band swept by render's ring artefacts (1 elsewhere).
MaskGrid ring_suppression_mask(const GridSpec& spec);

}  // namespace fscan
