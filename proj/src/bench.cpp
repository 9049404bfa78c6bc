#include "fscan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fscan/oracle.hpp"
#include "fscan/rng.hpp"

namespace fscan {

ScanGrid noise_grid(const GridSpec& spec, std::uint64_t seed) {
    validate(spec);
    Rng rng(Rng::mix(seed, 0xBE7C));
    Array2D out(spec.n, spec.n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform();
    return ScanGrid(spec, std::move(out));
}

BenchReport run_bench(const std::string& workload, const MatchConfig& cfg,
                      int passes, int burn_in, std::uint64_t seed) {
    if (passes < 100) throw std::invalid_argument("run_bench: passes must be >= 100");
    if (burn_in < 10) throw std::invalid_argument("run_bench: burn_in must be >= 10");
    validate(cfg);

    const GridSpec spec{cfg.n_xy, cfg.delta_xy};
    const ScanGrid f = noise_grid(spec, seed);
    const ScanGrid g = noise_grid(spec, seed + 1);

    std::function<void()> body;
    if (workload == "matcher") {
        body = [&] { (void)scan_match(f, g, cfg); };
    } else if (workload == "oracle") {
        std::vector<double> thetas(cfg.n_theta);
        for (int k = 0; k < cfg.n_theta; ++k)
            thetas[k] = (k - cfg.n_theta / 2) * cfg.delta_theta;
        body = [&, thetas = std::move(thetas)] {
            (void)brute_force_match(f, g, thetas, cfg);
        };
    } else if (workload == "noop") {
        body = [] {};
    } else {
        throw std::invalid_argument("run_bench: unknown workload '" + workload + "'");
    }

    using clock = std::chrono::steady_clock;
    std::vector<double> ms;
    ms.reserve(passes);
    for (int i = 0; i < burn_in + passes; ++i) {
        const auto t0 = clock::now();
        body();
        const auto t1 = clock::now();
        if (i >= burn_in)
            ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }

    double total_ms = 0.0;
    for (double v : ms) total_ms += v;
    std::sort(ms.begin(), ms.end());
    const std::size_t p95 =
        std::min(ms.size() - 1,
                 static_cast<std::size_t>(std::ceil(0.95 * ms.size())) - 1);

    BenchReport report;
    report.workload = workload;
    report.n_xy = cfg.n_xy;
    report.n_theta = cfg.n_theta;
    report.passes = passes;
    report.mean_hz = total_ms > 0.0 ? passes / (total_ms / 1000.0)
                                    : std::numeric_limits<double>::infinity();
    report.median_ms = ms[ms.size() / 2];
    report.p95_ms = ms[p95];
    report.host = host_descriptor();
    return report;
}

std::string host_descriptor() {
    std::string model = "unknown-cpu";
    std::ifstream info("/proc/cpuinfo");
    std::string line;
    while (std::getline(info, line)) {
        const auto pos = line.find("model name");
        if (pos == std::string::npos) continue;
        const auto colon = line.find(':');
        if (colon != std::string::npos) {
            model = line.substr(colon + 1);
            break;
        }
    }
    // Trim and keep the descriptor CSV-safe.
    const auto first = model.find_first_not_of(" \t");
    const auto last = model.find_last_not_of(" \t");
    model = first == std::string::npos ? "unknown-cpu"
                                       : model.substr(first, last - first + 1);
    for (char& c : model)
        if (c == ',') c = ';';
    return model + " x" + std::to_string(std::thread::hardware_concurrency());
}

std::string bench_csv_header() {
    return "workload,n_xy,n_theta,passes,mean_hz,median_ms,p95_ms,host";
}

std::string to_csv_row(const BenchReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.6g,%.6g,%.6g,%s",
                  r.workload.c_str(), r.n_xy, r.n_theta, r.passes, r.mean_hz,
                  r.median_ms, r.p95_ms, r.host.c_str());
    return buf;
}

}  // namespace fscan
