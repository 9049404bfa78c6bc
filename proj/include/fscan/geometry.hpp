#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace fscan {

inline constexpr double kPi = std::numbers::pi;

/// Wrap an angle to (-pi, pi].
double normalize_angle(double theta);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

/// SE(2) element. theta is kept in (-pi, pi]; positive theta is
/// counter-clockwise in the (x right, y up) world frame.
struct Pose2D {
    double theta = 0.0;
    double tx = 0.0;
    double ty = 0.0;

    static Pose2D identity() { return {}; }
    Vec2 translation() const { return {tx, ty}; }
};

Pose2D compose(const Pose2D& a, const Pose2D& b);
Pose2D inverse(const Pose2D& p);

/// R(theta) * x + t
Vec2 apply(const Pose2D& p, const Vec2& x);

/// R(theta) * x
Vec2 rotate_vec(double theta, const Vec2& x);

/// Square grid geometry: n cells per side (odd, so the centre cell sits at
/// world (0,0)) with delta metres per cell. Cell centres along each axis are
/// (k - (n-1)/2) * delta; row index increases with -y, column with +x.
struct GridSpec {
    int n = 0;
    double delta = 0.0;

    double extent() const { return n * delta; }
    /// World offset of index k along an axis, in metres.
    double axis_coord(int k) const { return (k - (n - 1) / 2) * delta; }
    Vec2 cell_center(int row, int col) const {
        return {axis_coord(col), -axis_coord(row)};
    }

    bool operator==(const GridSpec& o) const = default;
};

/// Throws std::invalid_argument unless n is odd and positive and delta > 0.
void validate(const GridSpec& spec);

/// Pose text format: one CSV row "theta,tx,ty" at full precision.
std::string format_pose_csv(const Pose2D& p);
Pose2D parse_pose_csv(const std::string& line);

}  // namespace fscan
