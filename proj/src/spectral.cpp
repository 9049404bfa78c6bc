#include "fscan/spectral.hpp"

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace fscan {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct ShapePlans {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Per-thread cache of in-place c2c plans keyed by shape. Plans are created
// with FFTW_ESTIMATE: planning stays cheap and never clobbers the buffer.
class FftEngine {
  public:
    ~FftEngine() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        for (auto& [shape, p] : plans_) {
            if (p.fwd) fftw_destroy_plan(p.fwd);
            if (p.bwd) fftw_destroy_plan(p.bwd);
            if (p.buf) fftw_free(p.buf);
        }
    }

    ShapePlans& shape(int rows, int cols) {
        const auto key = std::make_pair(rows, cols);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        ShapePlans p;
        p.buf = fftw_alloc_complex(static_cast<std::size_t>(rows) * cols);
        if (!p.buf) throw std::bad_alloc();
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            p.fwd = fftw_plan_dft_2d(rows, cols, p.buf, p.buf, FFTW_FORWARD,
                                     FFTW_ESTIMATE);
            p.bwd = fftw_plan_dft_2d(rows, cols, p.buf, p.buf, FFTW_BACKWARD,
                                     FFTW_ESTIMATE);
        }
        if (!p.fwd || !p.bwd) throw std::runtime_error("FFTW plan creation failed");
        return plans_.emplace(key, p).first->second;
    }

  private:
    std::map<std::pair<int, int>, ShapePlans> plans_;
};

FftEngine& engine() {
    thread_local FftEngine e;
    return e;
}

std::complex<double>* as_complex(fftw_complex* p) {
    return reinterpret_cast<std::complex<double>*>(p);
}

}  // namespace

Spectrum dft2(const Array2D& g) {
    const int n = static_cast<int>(g.rows());
    if (n < 2 || g.cols() != g.rows())
        throw std::invalid_argument("dft2: input must be square with n >= 2");
    auto& p = engine().shape(n, n);
    auto* buf = as_complex(p.buf);
    for (std::size_t i = 0; i < g.size(); ++i) buf[i] = g[i];
    fftw_execute(p.fwd);
    Spectrum s;
    s.n = n;
    s.values = ComplexArray2D(n, n);
    const int h = n / 2;
    for (int r = 0; r < n; ++r) {
        const int sr = (r - h + n) % n;
        for (int c = 0; c < n; ++c)
            s.values(r, c) = buf[static_cast<std::size_t>(sr) * n + (c - h + n) % n];
    }
    return s;
}

Array2D idft2(const Spectrum& s) {
    const int n = s.n;
    if (n < 2 || s.values.rows() != static_cast<std::size_t>(n) ||
        s.values.cols() != static_cast<std::size_t>(n))
        throw std::invalid_argument("idft2: malformed spectrum");
    auto& p = engine().shape(n, n);
    auto* buf = as_complex(p.buf);
    const int h = n / 2;
    for (int r = 0; r < n; ++r) {
        const int dr = (r - h + n) % n;  // raw row fed by centred row r
        for (int c = 0; c < n; ++c)
            buf[static_cast<std::size_t>(dr) * n + (c - h + n) % n] = s.values(r, c);
    }
    fftw_execute(p.bwd);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    Array2D out(n, n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = buf[i].real() * scale;
    return out;
}

Array2D magnitude(const Spectrum& s) {
    Array2D out(s.values.rows(), s.values.cols());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(s.values[i]);
    return out;
}

CorrelationSurface xcorr(const Array2D& a, const Array2D& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("xcorr: shape mismatch");
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    auto& p = engine().shape(rows, cols);
    auto* buf = as_complex(p.buf);

    for (std::size_t i = 0; i < a.size(); ++i) buf[i] = a[i];
    fftw_execute(p.fwd);
    std::vector<std::complex<double>> fa(buf, buf + a.size());

    for (std::size_t i = 0; i < b.size(); ++i) buf[i] = b[i];
    fftw_execute(p.fwd);
    for (std::size_t i = 0; i < b.size(); ++i) buf[i] *= std::conj(fa[i]);
    fftw_execute(p.bwd);

    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    const int hr = rows / 2;
    const int hc = cols / 2;
    CorrelationSurface out;
    out.scores = Array2D(rows, cols);
    out.row_coords.resize(rows);
    out.col_coords.resize(cols);
    for (int r = 0; r < rows; ++r) {
        out.row_coords[r] = r - hr;
        const int sr = (r - hr + rows) % rows;
        for (int c = 0; c < cols; ++c)
            out.scores(r, c) =
                buf[static_cast<std::size_t>(sr) * cols + (c - hc + cols) % cols]
                    .real() *
                scale;
    }
    for (int c = 0; c < cols; ++c) out.col_coords[c] = c - hc;
    return out;
}

int next_fast_size(int n) {
    if (n < 1) return 1;
    for (int candidate = n;; ++candidate) {
        int m = candidate;
        for (int f : {2, 3, 5, 7})
            while (m % f == 0) m /= f;
        if (m == 1) return candidate;
    }
}

}  // namespace fscan
