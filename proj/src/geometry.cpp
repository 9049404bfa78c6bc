#include "fscan/geometry.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace fscan {

double normalize_angle(double theta) {
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta <= -kPi) theta += 2.0 * kPi;
    if (theta > kPi) theta -= 2.0 * kPi;
    return theta;
}

Pose2D compose(const Pose2D& a, const Pose2D& b) {
    const Vec2 t = apply(a, {b.tx, b.ty});
    return {normalize_angle(a.theta + b.theta), t.x, t.y};
}

Pose2D inverse(const Pose2D& p) {
    const Vec2 t = rotate_vec(-p.theta, {-p.tx, -p.ty});
    return {normalize_angle(-p.theta), t.x, t.y};
}

Vec2 apply(const Pose2D& p, const Vec2& x) {
    const Vec2 r = rotate_vec(p.theta, x);
    return {r.x + p.tx, r.y + p.ty};
}

Vec2 rotate_vec(double theta, const Vec2& x) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * x.x - s * x.y, s * x.x + c * x.y};
}

void validate(const GridSpec& spec) {
    if (spec.n <= 0 || spec.n % 2 == 0)
        throw std::invalid_argument("GridSpec: n must be odd and positive, got " +
                                    std::to_string(spec.n));
    if (!(spec.delta > 0.0))
        throw std::invalid_argument("GridSpec: delta must be > 0");
}

std::string format_pose_csv(const Pose2D& p) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", p.theta, p.tx, p.ty);
    return buf;
}

Pose2D parse_pose_csv(const std::string& line) {
    Pose2D p;
    double* fields[3] = {&p.theta, &p.tx, &p.ty};
    const char* ptr = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 3; ++i) {
        while (ptr != end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
        auto [next, ec] = std::from_chars(ptr, end, *fields[i]);
        if (ec != std::errc())
            throw std::invalid_argument("bad pose row: '" + line + "'");
        ptr = next;
        if (i < 2) {
            while (ptr != end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
            if (ptr == end || *ptr != ',')
                throw std::invalid_argument("bad pose row: '" + line + "'");
            ++ptr;
        }
    }
    return p;
}

}  // namespace fscan
