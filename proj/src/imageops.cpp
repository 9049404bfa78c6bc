#include "fscan/imageops.hpp"

#include <cmath>
#include <stdexcept>

namespace fscan {

namespace {

// Bilinear lookup with zero fill outside [0, rows-1] x [0, cols-1].
double sample_bilinear(const Array2D& a, double row, double col) {
    const double r0f = std::floor(row);
    const double c0f = std::floor(col);
    const long r0 = static_cast<long>(r0f);
    const long c0 = static_cast<long>(c0f);
    const double fr = row - r0f;
    const double fc = col - c0f;
    const long rows = static_cast<long>(a.rows());
    const long cols = static_cast<long>(a.cols());
    auto at = [&](long r, long c) -> double {
        if (r < 0 || r >= rows || c < 0 || c >= cols) return 0.0;
        return a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    };
    return (1.0 - fr) * ((1.0 - fc) * at(r0, c0) + fc * at(r0, c0 + 1)) +
           fr * ((1.0 - fc) * at(r0 + 1, c0) + fc * at(r0 + 1, c0 + 1));
}

}  // namespace

ScanGrid hanning_window(const GridSpec& spec) {
    validate(spec);
    const int n = spec.n;
    std::vector<double> w(n, 1.0);
    if (n > 1) {
        for (int i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    }
    Array2D out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = w[r] * w[c];
    return ScanGrid(spec, std::move(out));
}

Array2D bandpass_mask(int n, double r_lo, double r_hi) {
    if (n <= 0) throw std::invalid_argument("bandpass_mask: n must be positive");
    if (!(r_lo >= 0.0 && r_lo < r_hi && r_hi <= 1.0))
        throw std::invalid_argument(
            "bandpass_mask: band must satisfy 0 <= r_lo < r_hi <= 1");
    const int c = n / 2;
    const double nyq = n / 2.0;
    Array2D out(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double rho = std::hypot(double(i - c), double(j - c)) / nyq;
            if (rho >= r_lo && rho <= r_hi) out(i, j) = 1.0;
        }
    }
    return out;
}

ScanGrid rotate_bilinear(const ScanGrid& g, double theta) {
    const int n = g.spec.n;
    if (theta == 0.0) return g;
    const double c = (n - 1) / 2.0;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    Array2D out(n, n, 0.0);
    for (int r = 0; r < n; ++r) {
        const double v = r - c;
        for (int col = 0; col < n; ++col) {
            const double u = col - c;
            // Index-space image of R(-theta) under the row = -y convention.
            const double src_row = c + st * u + ct * v;
            const double src_col = c + ct * u - st * v;
            out(r, col) = sample_bilinear(g.values, src_row, src_col);
        }
    }
    return ScanGrid(g.spec, std::move(out));
}

Array2D cart2pol(const Array2D& a, int n_angle, int n_radius,
                 double angle_span) {
    if (n_angle < 2 || n_radius < 2)
        throw std::invalid_argument("cart2pol: n_angle and n_radius must be >= 2");
    const int n = static_cast<int>(a.rows());
    const int c = n / 2;
    const double r_max = n / 2.0;
    Array2D out(n_angle, n_radius, 0.0);
    for (int i = 0; i < n_angle; ++i) {
        const double phi = -angle_span / 2.0 + angle_span * i / n_angle;
        const double cp = std::cos(phi);
        const double sp = std::sin(phi);
        for (int j = 0; j < n_radius; ++j) {
            const double r = r_max * (j + 1) / n_radius;
            out(i, j) = sample_bilinear(a, c - r * sp, c + r * cp);
        }
    }
    return out;
}

Array2D wrap_pad(const Array2D& p, int pad_angle) {
    const int na = static_cast<int>(p.rows());
    const int nr = static_cast<int>(p.cols());
    if (pad_angle < 0 || pad_angle >= na)
        throw std::invalid_argument("wrap_pad: need 0 <= pad_angle < n_angle");
    if (pad_angle == 0) return p;
    Array2D out(na + 2 * pad_angle, nr + 2 * pad_angle, 0.0);
    for (int i = 0; i < na + 2 * pad_angle; ++i) {
        const int src = ((i - pad_angle) % na + na) % na;
        for (int j = 0; j < nr; ++j) out(i, j + pad_angle) = p(src, j);
    }
    return out;
}

Array2D zero_pad(const Array2D& g, int out_n) {
    const int n = static_cast<int>(g.rows());
    if (out_n < n) throw std::invalid_argument("zero_pad: out_n must be >= n");
    if (out_n == n) return g;
    const int off = (out_n - n) / 2;
    Array2D out(out_n, out_n, 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r + off, c + off) = g(r, c);
    return out;
}

Array2D zero_pad(const ScanGrid& g, int out_n) {
    return zero_pad(g.values, out_n);
}

ScanGrid apply_mask(const ScanGrid& f, const MaskGrid& m) {
    if (!(f.spec == m.spec))
        throw std::invalid_argument("apply_mask: scan and mask specs differ");
    Array2D out(f.values.rows(), f.values.cols());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f.values[i] * m.values[i];
    return ScanGrid(f.spec, std::move(out));
}

}  // namespace fscan
