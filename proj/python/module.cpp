#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "fscan/io.hpp"
#include "fscan/matcher.hpp"
#include "fscan/odometry.hpp"
#include "fscan/oracle.hpp"
#include "fscan/synth.hpp"

namespace py = pybind11;
using namespace fscan;

namespace {

Array2D to_array2d(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array");
    Array2D out(static_cast<std::size_t>(a.shape(0)),
                static_cast<std::size_t>(a.shape(1)));
    std::memcpy(out.data(), a.data(), sizeof(double) * out.size());
    return out;
}

py::array_t<double> from_array2d(const Array2D& a) {
    py::array_t<double> out({a.rows(), a.cols()});
    std::memcpy(out.mutable_data(), a.data(), sizeof(double) * a.size());
    return out;
}

ScanGrid to_scan(const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                 double delta) {
    Array2D values = to_array2d(a);
    const GridSpec spec{static_cast<int>(values.rows()), delta};
    return ScanGrid(spec, std::move(values));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Decoupled Fourier scan matching for dense 2D radar-style grids";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int n, double delta) {
                 GridSpec s{n, delta};
                 validate(s);
                 return s;
             }),
             py::arg("n"), py::arg("delta"))
        .def_readonly("n", &GridSpec::n)
        .def_readonly("delta", &GridSpec::delta)
        .def_property_readonly("extent", &GridSpec::extent)
        .def("__repr__", [](const GridSpec& s) {
            return "GridSpec(n=" + std::to_string(s.n) +
                   ", delta=" + std::to_string(s.delta) + ")";
        });

    py::class_<Pose2D>(m, "Pose2D")
        .def(py::init([](double theta, double tx, double ty) {
                 return Pose2D{theta, tx, ty};
             }),
             py::arg("theta") = 0.0, py::arg("tx") = 0.0, py::arg("ty") = 0.0)
        .def_readwrite("theta", &Pose2D::theta)
        .def_readwrite("tx", &Pose2D::tx)
        .def_readwrite("ty", &Pose2D::ty)
        .def("__repr__", [](const Pose2D& p) { return "Pose2D(" + format_pose_csv(p) + ")"; });

    m.def("compose", &compose, py::arg("a"), py::arg("b"));
    m.def("inverse", &inverse, py::arg("p"));
    m.def(
        "apply",
        [](const Pose2D& p, double x, double y) {
            const Vec2 r = apply(p, Vec2{x, y});
            return py::make_tuple(r.x, r.y);
        },
        py::arg("p"), py::arg("x"), py::arg("y"));
    m.def("normalize_angle", &normalize_angle, py::arg("theta"));

    py::class_<MatchConfig>(m, "MatchConfig")
        .def(py::init<>())
        .def_readwrite("n_theta", &MatchConfig::n_theta)
        .def_readwrite("delta_theta", &MatchConfig::delta_theta)
        .def_readwrite("t_theta", &MatchConfig::t_theta)
        .def_readwrite("n_xy", &MatchConfig::n_xy)
        .def_readwrite("delta_xy", &MatchConfig::delta_xy)
        .def_readwrite("t_xy", &MatchConfig::t_xy)
        .def_readwrite("band_lo", &MatchConfig::band_lo)
        .def_readwrite("band_hi", &MatchConfig::band_hi)
        .def_readwrite("n_radius", &MatchConfig::n_radius)
        .def_readwrite("pad_angle", &MatchConfig::pad_angle)
        .def_readwrite("softargmax_window", &MatchConfig::softargmax_window)
        .def_readwrite("normalize_scores", &MatchConfig::normalize_scores);
    m.def("config_for_grid", [](int n, double delta) {
        MatchConfig cfg;
        cfg.n_xy = n;
        cfg.delta_xy = delta;
        cfg.n_radius = 0;
        finalize(cfg);
        validate(cfg);
        return cfg;
    }, py::arg("n"), py::arg("delta"),
       "Stock config with the grid geometry swapped in");

    py::class_<MatchResult>(m, "MatchResult")
        .def_readonly("pose", &MatchResult::pose)
        .def_property_readonly(
            "theta_scores",
            [](const MatchResult& r) { return from_array2d(r.theta_surface.scores); })
        .def_property_readonly(
            "theta_coords",
            [](const MatchResult& r) { return r.theta_surface.row_coords; })
        .def_property_readonly(
            "xy_scores",
            [](const MatchResult& r) { return from_array2d(r.xy_surface.scores); });

    m.def(
        "scan_match",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& g,
           double delta, const MatchConfig* cfg) {
            const ScanGrid fs = to_scan(f, delta);
            const ScanGrid gs = to_scan(g, delta);
            MatchConfig c;
            if (cfg) {
                c = *cfg;
            } else {
                c.n_xy = fs.spec.n;
                c.delta_xy = delta;
                c.n_radius = 0;
            }
            finalize(c);  // resolve sentinel n_radius / pad_angle
            return scan_match(fs, gs, c);
        },
        py::arg("f"), py::arg("g"), py::arg("delta"), py::arg("config") = nullptr,
        "Estimate the pose p with f(x) ~= g(apply(p, x))");

    m.def(
        "brute_force_match",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& g,
           double delta, const std::vector<double>& thetas) {
            const ScanGrid fs = to_scan(f, delta);
            const ScanGrid gs = to_scan(g, delta);
            MatchConfig cfg;
            cfg.n_xy = fs.spec.n;
            cfg.delta_xy = delta;
            cfg.n_radius = 0;
            finalize(cfg);
            const OracleResult r = brute_force_match(fs, gs, thetas, cfg);
            return py::make_tuple(r.pose, r.score);
        },
        py::arg("f"), py::arg("g"), py::arg("delta"), py::arg("thetas"));

    py::class_<Landmark>(m, "Landmark")
        .def(py::init([](double x, double y, double intensity, double radius) {
                 return Landmark{Vec2{x, y}, intensity, radius};
             }),
             py::arg("x"), py::arg("y"), py::arg("intensity"), py::arg("radius"))
        .def_property_readonly("x", [](const Landmark& l) { return l.position.x; })
        .def_property_readonly("y", [](const Landmark& l) { return l.position.y; })
        .def_readwrite("intensity", &Landmark::intensity)
        .def_readwrite("radius", &Landmark::radius);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_readwrite("speckle_sigma", &NoiseModel::speckle_sigma)
        .def_readwrite("ring_amplitude", &NoiseModel::ring_amplitude)
        .def_readwrite("dropout_prob", &NoiseModel::dropout_prob);

    py::class_<Scene>(m, "Scene")
        .def(py::init<>())
        .def_readwrite("landmarks", &Scene::landmarks)
        .def_readwrite("noise", &Scene::noise)
        .def_readwrite("rng_seed", &Scene::rng_seed);

    m.def("default_scene", &default_scene, py::arg("spec"), py::arg("seed"));
    m.def(
        "render",
        [](const Scene& scene, const Pose2D& pose, const GridSpec& spec,
           std::uint64_t draw) { return from_array2d(render(scene, pose, spec, draw).values); },
        py::arg("scene"), py::arg("pose"), py::arg("spec"), py::arg("draw") = 0);
    m.def(
        "make_pair",
        [](const Scene& scene, const Pose2D& rel, const GridSpec& spec) {
            auto [f, g, truth] = make_pair(scene, rel, spec);
            return py::make_tuple(from_array2d(f.values), from_array2d(g.values), truth);
        },
        py::arg("scene"), py::arg("relative_pose"), py::arg("spec"));

    m.def(
        "read_scan",
        [](const std::string& path) {
            const ScanGrid s = read_scan(path);
            return py::make_tuple(from_array2d(s.values), s.spec.delta);
        },
        py::arg("path"));
    m.def(
        "write_scan",
        [](const std::string& path,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
           double delta) { write_scan(path, to_scan(values, delta)); },
        py::arg("path"), py::arg("values"), py::arg("delta"));

    m.def(
        "integrate",
        [](const std::vector<Pose2D>& rels) { return integrate(rels).poses; },
        py::arg("relatives"));
    m.def(
        "kitti_drift",
        [](const std::vector<Pose2D>& est, const std::vector<Pose2D>& truth,
           const std::vector<double>& lengths, int stride) -> py::object {
            const auto r = kitti_drift(from_poses(est), from_poses(truth),
                                       lengths, stride);
            if (!r) return py::none();
            py::dict out;
            out["translation_percent"] = r->translation_percent;
            out["rotation_deg_per_km"] = r->rotation_deg_per_km;
            out["segments"] = r->segments;
            return out;
        },
        py::arg("estimate"), py::arg("truth"), py::arg("lengths"),
        py::arg("stride") = 1);
}
