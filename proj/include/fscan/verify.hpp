#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fscan/spectral.hpp"

namespace fscan {

struct VerifyItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyItem> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
};

using CorrelateFn =
    std::function<CorrelationSurface(const Array2D&, const Array2D&)>;

/// Transform-level checks: shift invariance of the magnitude spectrum,
/// agreement with a direct DFT summation, Parseval, round-trip.
VerifyReport verify_fourier_suite();

/// Search-level checks: integer-shift recovery through the correlator,
/// matcher agreement with the brute-force search, and the oracle's own
/// max-score property. `correlate` defaults to the library xcorr; the hook
/// exists so a deliberately broken correlator demonstrably fails the suite.
VerifyReport verify_oracle_suite(const CorrelateFn& correlate = {});

}  // namespace fscan
