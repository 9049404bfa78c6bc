#pragma once

#include "fscan/grid.hpp"

namespace fscan {

/// Separable 2D Hann window w(i)*w(j), w(i) = 0.5*(1 - cos(2*pi*i/(n-1))).
/// Zero on the boundary, 1 at the centre for odd n.
ScanGrid hanning_window(const GridSpec& spec);

/// Hard annular mask in the centred frequency layout: 1 where the normalized
/// radial frequency lies in [r_lo, r_hi], 0 elsewhere. Radii are fractions of
/// Nyquist (bin distance / (n/2)). Throws std::invalid_argument unless
/// 0 <= r_lo < r_hi <= 1.
Array2D bandpass_mask(int n, double r_lo, double r_hi);

/// output(x) = g(R(-theta) * x), bilinear about the grid centre; samples
/// falling outside the source grid are 0. Grid content turns CCW by +theta.
ScanGrid rotate_bilinear(const ScanGrid& g, double theta);

/// Resample a centred frequency-layout array onto polar coordinates.
/// Rows are angles Linspace over [-angle_span/2, angle_span/2), columns are
/// radii Linspace over (0, n/2]; bilinear, out-of-extent samples are 0.
Array2D cart2pol(const Array2D& a, int n_angle, int n_radius,
                 double angle_span);

/// Extend the angle axis (rows) on both sides by circularly wrapped copies
/// and zero-pad the radial axis (cols) by the same count.
Array2D wrap_pad(const Array2D& p, int pad_angle);

/// Centre the input in a zero field of side out_n (out_n >= n).
Array2D zero_pad(const Array2D& g, int out_n);
Array2D zero_pad(const ScanGrid& g, int out_n);

/// Elementwise product; specs must match.
ScanGrid apply_mask(const ScanGrid& f, const MaskGrid& m);

}  // namespace fscan
