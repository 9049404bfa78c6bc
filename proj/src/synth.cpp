#include "fscan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fscan/rng.hpp"

namespace fscan {

namespace {

// Ghost-ring geometry shared by render and ring_suppression_mask.
constexpr double kRingFracs[] = {0.35, 0.65};  // of the half-extent
constexpr double kRingWidthCells = 1.5;        // Gaussian sigma, in cells
constexpr double kRingMaskSigmas = 3.0;

constexpr std::uint64_t kDrawSpeckle = 0x5350;
constexpr std::uint64_t kDrawMotion = 0x4D4F;

void splat(Array2D& out, const GridSpec& spec, const Vec2& p, double intensity,
           double sigma) {
    const int n = spec.n;
    const double c = (n - 1) / 2.0;
    const double col_f = p.x / spec.delta + c;
    const double row_f = -p.y / spec.delta + c;
    const double reach = 4.0 * sigma / spec.delta;
    const int r0 = std::max(0, static_cast<int>(std::floor(row_f - reach)));
    const int r1 = std::min(n - 1, static_cast<int>(std::ceil(row_f + reach)));
    const int c0 = std::max(0, static_cast<int>(std::floor(col_f - reach)));
    const int c1 = std::min(n - 1, static_cast<int>(std::ceil(col_f + reach)));
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (int r = r0; r <= r1; ++r) {
        for (int col = c0; col <= c1; ++col) {
            const Vec2 x = spec.cell_center(r, col);
            const double d2 = (x - p).norm_sq();
            out(r, col) += intensity * std::exp(-d2 * inv2s2);
        }
    }
}

}  // namespace

void validate(const Scene& scene) {
    for (const auto& lm : scene.landmarks) {
        if (!(lm.intensity > 0.0))
            throw std::invalid_argument("scene: landmark intensities must be positive");
        if (!(lm.radius > 0.0))
            throw std::invalid_argument("scene: landmark radii must be positive");
    }
    if (!(scene.noise.speckle_sigma >= 0.0) || !(scene.noise.ring_amplitude >= 0.0))
        throw std::invalid_argument("scene: noise amplitudes must be non-negative");
    if (!(scene.noise.dropout_prob >= 0.0 && scene.noise.dropout_prob <= 1.0))
        throw std::invalid_argument("scene: dropout probability must lie in [0, 1]");
}

ScanGrid render(const Scene& scene, const Pose2D& pose, const GridSpec& spec,
                std::uint64_t draw) {
    validate(scene);
    validate(spec);
    const int n = spec.n;
    Array2D out(n, n, 0.0);

    const Pose2D sensor_from_world = inverse(pose);
    for (const auto& lm : scene.landmarks)
        splat(out, spec, apply(sensor_from_world, lm.position), lm.intensity,
              lm.radius);

    if (scene.noise.ring_amplitude > 0.0) {
        const double w = kRingWidthCells * spec.delta;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const double rad = spec.cell_center(r, c).norm();
                double v = 0.0;
                for (double frac : kRingFracs) {
                    const double ring_r = frac * spec.extent() / 2.0;
                    const double d = rad - ring_r;
                    v += std::exp(-d * d / (2.0 * w * w));
                }
                out(r, c) += scene.noise.ring_amplitude * v;
            }
        }
    }

    if (scene.noise.speckle_sigma > 0.0 || scene.noise.dropout_prob > 0.0) {
        Rng rng(Rng::mix(scene.rng_seed, kDrawSpeckle + (draw << 16)));
        if (scene.noise.speckle_sigma > 0.0)
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += scene.noise.speckle_sigma * rng.normal();
        if (scene.noise.dropout_prob > 0.0)
            for (std::size_t i = 0; i < out.size(); ++i)
                if (rng.bernoulli(scene.noise.dropout_prob)) out[i] = 0.0;
    }

    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], 0.0);
    return ScanGrid(spec, std::move(out));
}

std::tuple<ScanGrid, ScanGrid, Pose2D> make_pair(const Scene& scene,
                                                 const Pose2D& relative_pose,
                                                 const GridSpec& spec) {
    if (!(std::abs(relative_pose.theta) < kPi / 2.0))
        throw std::invalid_argument("make_pair: |theta| must be below pi/2");
    if (!(relative_pose.translation().norm() < 0.25 * spec.extent()))
        throw std::invalid_argument("make_pair: |t| must be below 25% of the extent");
    ScanGrid f = render(scene, Pose2D::identity(), spec, 1);
    ScanGrid g = render(scene, inverse(relative_pose), spec, 2);
    return {std::move(f), std::move(g), relative_pose};
}

TrajectorySample make_trajectory(const Scene& scene, const MotionModel& motion,
                                 int k, const GridSpec& spec) {
    if (k < 1) throw std::invalid_argument("make_trajectory: k must be >= 1");
    if (!(std::abs(motion.step.theta) < kPi / 2.0) ||
        !(motion.step.translation().norm() < 0.25 * spec.extent()))
        throw std::invalid_argument("make_trajectory: step outside the search envelope");

    Rng rng(Rng::mix(scene.rng_seed, kDrawMotion));
    TrajectorySample out;
    out.poses.reserve(k);
    out.scans.reserve(k);
    out.poses.push_back(Pose2D::identity());
    for (int i = 1; i < k; ++i) {
        Pose2D rel = motion.step;
        rel.theta += motion.jitter_theta * rng.normal();
        rel.tx += motion.jitter_xy * rng.normal();
        rel.ty += motion.jitter_xy * rng.normal();
        out.poses.push_back(compose(out.poses.back(), rel));
    }
    for (int i = 0; i < k; ++i)
        out.scans.push_back(render(scene, out.poses[i], spec, 1000 + i));
    return out;
}

namespace {

Scene uniform_scene(const GridSpec& spec, double x_lo, double x_hi,
                    double y_half, int count, std::uint64_t seed) {
    Scene scene;
    scene.rng_seed = seed;
    Rng rng(Rng::mix(seed, 0x5C33));
    scene.landmarks.reserve(count);
    for (int i = 0; i < count; ++i) {
        Landmark lm;
        lm.position = Vec2{rng.uniform(x_lo, x_hi), rng.uniform(-y_half, y_half)};
        lm.intensity = std::exp(rng.uniform(std::log(0.3), std::log(1.0)));
        lm.radius = rng.uniform(1.5, 3.0) * spec.delta;
        scene.landmarks.push_back(lm);
    }
    return scene;
}

}  // namespace

Scene default_scene(const GridSpec& spec, std::uint64_t seed) {
    const double half = 0.35 * spec.extent();
    return uniform_scene(spec, -half, half, half, 60, seed);
}

Scene corridor_scene(const GridSpec& spec, double length, std::uint64_t seed) {
    if (!(length >= 0.0))
        throw std::invalid_argument("corridor_scene: length must be non-negative");
    const double half = 0.35 * spec.extent();
    // Same landmark density as default_scene over the swept area.
    const int count =
        std::max(60, static_cast<int>(std::ceil(60.0 * (length + 2 * half) / (2 * half))));
    return uniform_scene(spec, -half, length + half, half, count, seed);
}

MaskGrid ring_suppression_mask(const GridSpec& spec) {
    validate(spec);
    const int n = spec.n;
    const double w = kRingWidthCells * spec.delta;
    Array2D out(n, n, 1.0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double rad = spec.cell_center(r, c).norm();
            for (double frac : kRingFracs) {
                const double ring_r = frac * spec.extent() / 2.0;
                if (std::abs(rad - ring_r) <= kRingMaskSigmas * w) {
                    out(r, c) = 0.0;
                    break;
                }
            }
        }
    }
    return MaskGrid(spec, std::move(out));
}

}  // namespace fscan
