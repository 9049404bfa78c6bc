#pragma once

#include <vector>

#include "fscan/grid.hpp"

namespace fscan {

/// 2D DFT in the centred layout: DC sits at bin (n/2, n/2).
struct Spectrum {
    int n = 0;
    ComplexArray2D values;
};

/// Unnormalized forward transform of a square real grid, re-centred.
Spectrum dft2(const Array2D& g);

/// Inverse of dft2 (1/n^2 normalization); returns the real part.
Array2D idft2(const Spectrum& s);

/// Elementwise complex modulus.
Array2D magnitude(const Spectrum& s);

/// Correlation scores plus the physical coordinate of every bin.
/// Coordinates are strictly increasing along each axis.
struct CorrelationSurface {
    Array2D scores;
    std::vector<double> row_coords;
    std::vector<double> col_coords;
};

/// Circular cross-correlation c[k] = sum_x a[x] * conj-free b[x+k], computed
/// as iDFT(conj(DFT(a)) * DFT(b)), real part. Zero lag lands on the middle
/// bin (rows/2, cols/2); coords are centred bin offsets until a caller
/// attaches physical units.
CorrelationSurface xcorr(const Array2D& a, const Array2D& b);

/// Smallest N >= n whose prime factors all lie in {2, 3, 5, 7}.
int next_fast_size(int n);

}  // namespace fscan
