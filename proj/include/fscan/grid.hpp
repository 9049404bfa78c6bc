#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fscan/geometry.hpp"

namespace fscan {

/// Dense row-major 2D array.
template <typename T>
class Grid2 {
  public:
    Grid2() = default;
    Grid2(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Grid2& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Array2D = Grid2<double>;
using ComplexArray2D = Grid2<std::complex<double>>;

/// Square grid of power values with physical cell size. Raw scans are
/// non-negative; filtered intermediates may be signed.
struct ScanGrid {
    GridSpec spec;
    Array2D values;

    ScanGrid() = default;
    ScanGrid(GridSpec s, Array2D v) : spec(s), values(std::move(v)) {
        validate(spec);
        if (values.rows() != static_cast<std::size_t>(spec.n) ||
            values.cols() != static_cast<std::size_t>(spec.n))
            throw std::invalid_argument("ScanGrid: values shape does not match spec");
    }
    static ScanGrid zeros(GridSpec s) {
        return ScanGrid(s, Array2D(s.n, s.n, 0.0));
    }
};

/// Per-cell weights in [0, 1] applied to a scan by Hadamard product.
struct MaskGrid {
    GridSpec spec;
    Array2D values;

    MaskGrid() = default;
    MaskGrid(GridSpec s, Array2D v) : spec(s), values(std::move(v)) {
        validate(spec);
        if (values.rows() != static_cast<std::size_t>(spec.n) ||
            values.cols() != static_cast<std::size_t>(spec.n))
            throw std::invalid_argument("MaskGrid: values shape does not match spec");
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!(values[i] >= 0.0 && values[i] <= 1.0))
                throw std::invalid_argument("MaskGrid: values must lie in [0, 1]");
    }
};

inline bool all_finite(const Array2D& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

}  // namespace fscan
