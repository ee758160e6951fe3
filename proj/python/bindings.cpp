// SPDX-License-Identifier: Apache-2.0
//
// absdeploy - gradient-based deployment of airborne base stations
// Copyright (C) 2026 The absdeploy authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "absdeploy/errors.hpp"
#include "absdeploy/geometry.hpp"
#include "absdeploy/interference.hpp"
#include "absdeploy/interop.hpp"
#include "absdeploy/orient_power.hpp"
#include "absdeploy/placement.hpp"
#include "absdeploy/propagation.hpp"
#include "absdeploy/resilience.hpp"

namespace py = pybind11;
using namespace absdeploy;

namespace {

py::array_t<double> gains_array(const CoverageMap& map) {
    py::array_t<double> out({map.num_tx, map.grid.nx, map.grid.ny});
    std::copy(map.gains.begin(), map.gains.end(), out.mutable_data());
    return out;
}

CoverageMap map_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& gains,
                           const CoverageGrid& grid) {
    if (gains.ndim() != 3 || gains.shape(1) != grid.nx || gains.shape(2) != grid.ny)
        throw InvalidArgumentError("gains must have shape (num_tx, nx, ny) matching the grid");
    CoverageMap map;
    map.grid = grid;
    map.num_tx = static_cast<int>(gains.shape(0));
    map.gains.assign(gains.data(), gains.data() + gains.size());
    map.differentiable = false;
    return map;
}

py::array_t<double> reshape(const std::vector<double>& v, const CoverageGrid& grid, int num_tx) {
    py::array_t<double> out({num_tx, grid.nx, grid.ny});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gradient-based deployment of airborne base stations";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgumentError>(m, "InvalidArgumentError", base.ptr());
    py::register_exception<InvalidSpecError>(m, "InvalidSpecError", base.ptr());
    py::register_exception<InfeasibleInitError>(m, "InfeasibleInitError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NoCoverageError>(m, "NoCoverageError", base.ptr());
    py::register_exception<UndefinedMetricError>(m, "UndefinedMetricError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<DegenerateDropError>(m, "DegenerateDropError", base.ptr());

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init<double, double>())
        .def(py::init([](py::tuple t) {
            if (t.size() != 2) throw py::value_error("expected (x, y)");
            return Vec2{t[0].cast<double>(), t[1].cast<double>()};
        }))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__iter__", [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
        .def("__eq__", [](const Vec2& a, const Vec2& b) { return a == b; })
        .def("__repr__", [](const Vec2& v) { return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")"; });
    py::implicitly_convertible<py::tuple, Vec2>();

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<double, double, double>())
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z);

    py::class_<Building>(m, "Building")
        .def(py::init([](Vec2 lo, Vec2 hi, double height) { return Building{lo, hi, height}; }), py::arg("min"),
             py::arg("max"), py::arg("height"))
        .def_readwrite("min", &Building::min)
        .def_readwrite("max", &Building::max)
        .def_readwrite("height", &Building::height);

    py::class_<Aoi>(m, "Aoi")
        .def(py::init([](Vec2 c, double r) { return Aoi{c, r}; }), py::arg("center"), py::arg("radius"))
        .def_readwrite("center", &Aoi::center)
        .def_readwrite("radius", &Aoi::radius);

    py::class_<Scene>(m, "Scene")
        .def(py::init<Vec2, Vec2, std::vector<Building>, double>(), py::arg("extent_min"), py::arg("extent_max"),
             py::arg("buildings") = std::vector<Building>{}, py::arg("hover_elevation") = 70.0)
        .def_property_readonly("extent_min", &Scene::extent_min)
        .def_property_readonly("extent_max", &Scene::extent_max)
        .def_property_readonly("buildings", &Scene::buildings)
        .def_property_readonly("hover_elevation", &Scene::hover_elevation);

    m.def("los_clearance", &los_clearance, py::arg("tx"), py::arg("rx"), py::arg("scene"));
    m.def("semi_random_init", &semi_random_init, py::arg("scene"), py::arg("n"), py::arg("seed"), py::arg("min_sep"),
          py::arg("blocking_clearance") = 15.0, py::arg("budget") = 10000);

    // Placement
    py::enum_<AttractionForm>(m, "AttractionForm")
        .value("printed", AttractionForm::printed)
        .value("shifted", AttractionForm::shifted);

    py::class_<PlacementHyper>(m, "PlacementHyper")
        .def(py::init<>())
        .def_readwrite("alpha", &PlacementHyper::alpha)
        .def_readwrite("beta", &PlacementHyper::beta)
        .def_readwrite("gamma", &PlacementHyper::gamma)
        .def_readwrite("eta", &PlacementHyper::eta)
        .def_readwrite("kappa_a", &PlacementHyper::kappa_a)
        .def_readwrite("kappa_b", &PlacementHyper::kappa_b)
        .def_readwrite("kappa_i", &PlacementHyper::kappa_i)
        .def_readwrite("d_min", &PlacementHyper::d_min)
        .def_readwrite("c_b", &PlacementHyper::c_b)
        .def_readwrite("rooftop_tolerance", &PlacementHyper::rooftop_tolerance)
        .def_readwrite("attraction", &PlacementHyper::attraction)
        .def_readwrite("learning_rate", &PlacementHyper::learning_rate)
        .def_readwrite("max_iterations", &PlacementHyper::max_iterations)
        .def_readwrite("patience", &PlacementHyper::patience);

    m.def(
        "placement_loss",
        [](const std::vector<Vec2>& p, const Scene& s, const std::vector<Aoi>& a, const PlacementHyper& h) {
            return placement_loss(p, s, a, h);
        },
        py::arg("positions"), py::arg("scene"), py::arg("aois"), py::arg("hyper") = PlacementHyper{});
    m.def(
        "placement_gradient",
        [](const std::vector<Vec2>& p, const Scene& s, const std::vector<Aoi>& a, const PlacementHyper& h) {
            return placement_gradient(p, s, a, h);
        },
        py::arg("positions"), py::arg("scene"), py::arg("aois"), py::arg("hyper") = PlacementHyper{});
    m.def(
        "optimize_placement",
        [](const Scene& s, const std::vector<Aoi>& a, const std::vector<Vec2>& init, const PlacementHyper& h) {
            const auto r = optimize_placement(s, a, init, h);
            py::dict d;
            d["positions"] = r.positions;
            d["loss"] = r.trace.loss;
            d["best_loss"] = r.trace.best_loss;
            d["best_index"] = r.trace.best_index;
            d["stop_reason"] = to_string(r.trace.reason);
            return d;
        },
        py::arg("scene"), py::arg("aois"), py::arg("init"), py::arg("hyper") = PlacementHyper{});
    m.def(
        "aoi_satisfaction",
        [](const std::vector<Vec2>& p, const std::vector<Aoi>& a) { return aoi_satisfaction(p, a); },
        py::arg("positions"), py::arg("aois"));

    // Propagation
    py::enum_<PatternKind>(m, "PatternKind")
        .value("directional_3gpp", PatternKind::directional_3gpp)
        .value("halfwave_dipole", PatternKind::halfwave_dipole)
        .value("isotropic", PatternKind::isotropic);

    py::class_<AntennaConfig>(m, "AntennaConfig")
        .def(py::init<>())
        .def_readwrite("pattern", &AntennaConfig::pattern)
        .def_readwrite("azimuth", &AntennaConfig::azimuth)
        .def_readwrite("tilt", &AntennaConfig::tilt)
        .def_readwrite("boresight_gain_dbi", &AntennaConfig::boresight_gain_dbi);

    py::class_<TxConfig>(m, "TxConfig")
        .def(py::init([](Vec3 pos, AntennaConfig ant, double p) { return TxConfig{pos, ant, p}; }),
             py::arg("position"), py::arg("antenna") = AntennaConfig{}, py::arg("power_dbm") = 43.0)
        .def_readwrite("position", &TxConfig::position)
        .def_readwrite("antenna", &TxConfig::antenna)
        .def_readwrite("power_dbm", &TxConfig::power_dbm)
        .def("power_watts", &TxConfig::power_watts);

    py::class_<PropagationModel>(m, "PropagationModel")
        .def(py::init<>())
        .def_readwrite("frequency_hz", &PropagationModel::frequency_hz)
        .def_readwrite("occlusion_softness", &PropagationModel::occlusion_softness)
        .def_readwrite("occlusion_floor", &PropagationModel::occlusion_floor)
        .def_readwrite("rx_height", &PropagationModel::rx_height)
        .def_readwrite("rx_pattern", &PropagationModel::rx_pattern)
        .def_readwrite("smooth_pattern", &PropagationModel::smooth_pattern);

    py::class_<CoverageGrid>(m, "CoverageGrid")
        .def_static("covering", &CoverageGrid::covering, py::arg("scene"), py::arg("cell_size") = 10.0)
        .def_readonly("origin", &CoverageGrid::origin)
        .def_readonly("cell_size", &CoverageGrid::cell_size)
        .def_readonly("nx", &CoverageGrid::nx)
        .def_readonly("ny", &CoverageGrid::ny)
        .def("cell_center", &CoverageGrid::cell_center);

    m.def("free_space_gain", &free_space_gain, py::arg("distance"), py::arg("frequency_hz"));
    m.def("link_gain", &link_gain, py::arg("tx"), py::arg("rx"), py::arg("scene"),
          py::arg("model") = PropagationModel{});
    m.def(
        "coverage_map",
        [](const Scene& s, const std::vector<TxConfig>& txs, const CoverageGrid& g, const PropagationModel& model) {
            return gains_array(compute_coverage_map(s, txs, g, model));
        },
        py::arg("scene"), py::arg("txs"), py::arg("grid"), py::arg("model") = PropagationModel{},
        "Linear path gains with shape (num_tx, nx, ny).");
    m.def("default_mask_threshold", &default_mask_threshold, py::arg("scene"), py::arg("model") = PropagationModel{});

    // Interference
    m.def(
        "sir_db",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& gains, const CoverageGrid& g,
           const std::vector<double>& watts, double eps) {
            const auto map = map_from_array(gains, g);
            return reshape(sir_map(map, watts, eps).db, g, map.num_tx);
        },
        py::arg("gains"), py::arg("grid"), py::arg("watts"), py::arg("eps") = 1e-20);
    m.def(
        "effective_sir",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& gains, const CoverageGrid& g,
           const std::vector<double>& watts, double threshold, double eps) {
            const auto map = map_from_array(gains, g);
            return effective_sir(sir_map(map, watts, eps), coverage_mask(map, threshold));
        },
        py::arg("gains"), py::arg("grid"), py::arg("watts"), py::arg("threshold") = 0.0, py::arg("eps") = 1e-20);
    m.def("nlse", [](const std::vector<double>& r, double b) { return nlse(r, b); }, py::arg("values"),
          py::arg("beta") = 1.0);
    m.def("lse", [](const std::vector<double>& r, double b) { return lse(r, b); }, py::arg("values"),
          py::arg("beta") = 1.0);
    m.def("softmin_weights", [](const std::vector<double>& x, double t) { return softmin_weights(x, t); },
          py::arg("values"), py::arg("temperature") = 25.0);
    m.def("jain_fairness", [](const std::vector<double>& v) { return jain_fairness(v); }, py::arg("values_db"));

    // Orientation and power
    py::class_<AbsOrientation>(m, "AbsOrientation")
        .def(py::init([](double az, double tilt, double p) { return AbsOrientation{az, tilt, p}; }),
             py::arg("azimuth") = 0.0, py::arg("tilt") = std::numbers::pi / 2.0, py::arg("power_dbm") = 43.0)
        .def_readwrite("azimuth", &AbsOrientation::azimuth)
        .def_readwrite("tilt", &AbsOrientation::tilt)
        .def_readwrite("power_dbm", &AbsOrientation::power_dbm);

    m.def(
        "optimize_orient_power",
        [](const Scene& s, const std::vector<Vec2>& positions, const std::vector<Aoi>& aois, const std::string& method,
           const std::vector<AbsOrientation>& init, double cell_size, double lr, int epochs) {
            const OrientPowerProblem problem(s, positions, aois, orient_method_from_string(method),
                                             CoverageGrid::covering(s, cell_size));
            OptimizerSchedule sched;
            sched.learning_rate = lr;
            sched.max_epochs = epochs;
            const auto r = optimize_orient_power(problem, init, sched);
            std::vector<double> losses;
            for (const auto& e : r.trace) losses.push_back(e.loss);
            py::dict d;
            d["params"] = r.params;
            d["best_loss"] = r.best_loss;
            d["loss"] = losses;
            d["stop_reason"] = r.stop_reason;
            d["initial_sir"] = problem.map_effective_sir(init);
            d["final_sir"] = problem.map_effective_sir(r.params);
            return d;
        },
        py::arg("scene"), py::arg("positions"), py::arg("aois"), py::arg("method"), py::arg("init"),
        py::arg("cell_size") = 10.0, py::arg("learning_rate") = 0.1, py::arg("epochs") = 150);

    // Resilience
    py::class_<DropEvent>(m, "DropEvent")
        .def_readonly("start", &DropEvent::start)
        .def_readonly("end", &DropEvent::end)
        .def_property_readonly("duration", &DropEvent::duration)
        .def_property_readonly("middle", &DropEvent::middle)
        .def("__repr__", [](const DropEvent& e) {
            return "DropEvent(" + std::to_string(e.start) + ", " + std::to_string(e.end) + ")";
        });

    m.def(
        "detect_drops",
        [](const std::vector<double>& series, double t_min, int c_min, int s_p) {
            return detect_drops(series, DetectorConfig{t_min, c_min, s_p});
        },
        py::arg("series"), py::arg("t_min") = 1e-14, py::arg("c_min") = 3, py::arg("s_p") = 5);
    m.def(
        "recovery_trajectory",
        [](Vec2 start, Vec2 target, const Scene& s) { return recovery_trajectory(start, target, s); },
        py::arg("start"), py::arg("target"), py::arg("scene"));
    m.def(
        "simulate_ue_track",
        [](const Scene& s, const std::vector<Vec2>& waypoints, int steps, double speed) {
            return simulate_ue_track(s, waypoints, steps, speed).positions;
        },
        py::arg("scene"), py::arg("waypoints"), py::arg("steps"), py::arg("speed"));
    m.def(
        "received_power_series",
        [](const Scene& s, const std::vector<Vec2>& track, const TxConfig& tx) {
            UeTrack t;
            t.positions = track;
            return received_power_series(t, tx, s);
        },
        py::arg("scene"), py::arg("track"), py::arg("tx"));

    py::class_<RecoverySchedule>(m, "RecoverySchedule")
        .def_readonly("start", &RecoverySchedule::start)
        .def_readonly("middle", &RecoverySchedule::middle)
        .def_readonly("end", &RecoverySchedule::end)
        .def_readonly("reaction", &RecoverySchedule::reaction)
        .def_readonly("stationary", &RecoverySchedule::stationary)
        .def_readonly("return_path", &RecoverySchedule::return_path);
    m.def(
        "build_recovery_schedule",
        [](const std::vector<Vec2>& traj, const DropEvent& e) { return build_recovery_schedule(traj, e); },
        py::arg("trajectory"), py::arg("drop"));

    // Interop
    py::class_<ScenarioDoc>(m, "ScenarioDoc")
        .def(py::init<>())
        .def_readwrite("aois", &ScenarioDoc::aois)
        .def_readwrite("buildings", &ScenarioDoc::buildings)
        .def_readwrite("hyper", &ScenarioDoc::hyper)
        .def_readwrite("num_abs", &ScenarioDoc::num_abs)
        .def_readwrite("seed", &ScenarioDoc::seed)
        .def("scene", &ScenarioDoc::scene)
        .def("to_json", [](const ScenarioDoc& d) { return to_json(d); })
        .def("__eq__", [](const ScenarioDoc& a, const ScenarioDoc& b) { return a == b; });
    m.def("parse_scenario", &parse_scenario, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));

    py::class_<DeployedAbs>(m, "DeployedAbs")
        .def(py::init([](int id, double x, double y, double az, double tilt, double p) {
                 return DeployedAbs{id, x, y, az, tilt, p};
             }),
             py::arg("id"), py::arg("x"), py::arg("y"), py::arg("azimuth_deg") = 0.0, py::arg("tilt_deg") = 90.0,
             py::arg("power_dbm") = 43.0)
        .def_readwrite("id", &DeployedAbs::id)
        .def_readwrite("x", &DeployedAbs::x)
        .def_readwrite("y", &DeployedAbs::y)
        .def_readwrite("azimuth_deg", &DeployedAbs::azimuth_deg)
        .def_readwrite("tilt_deg", &DeployedAbs::tilt_deg)
        .def_readwrite("power_dbm", &DeployedAbs::power_dbm);

    py::class_<DeploymentDoc>(m, "DeploymentDoc")
        .def(py::init<>())
        .def_readwrite("abs", &DeploymentDoc::abs)
        .def("positions", &DeploymentDoc::positions)
        .def("params", &DeploymentDoc::params)
        .def("to_json", [](const DeploymentDoc& d) { return to_json(d); })
        .def("__eq__", [](const DeploymentDoc& a, const DeploymentDoc& b) { return a == b; });
    m.def("parse_deployment", &parse_deployment, py::arg("text"));
    m.def("load_deployment", &load_deployment, py::arg("path"));

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
