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

#pragma once

// Random but valid documents for round-trip tests. Values use the full double
// range of mantissas so that any precision loss shows up.

#include <cmath>
#include <string>

#include "absdeploy/interop.hpp"
#include "absdeploy/random.hpp"
#include "absdeploy/units.hpp"

namespace testdocs {

using namespace absdeploy;

inline double messy(Rng& rng, double lo, double hi) {
    // Mix exact short decimals with full-precision values.
    const double v = rng.uniform(lo, hi);
    const double r = std::round(v * 4.0) / 4.0;
    return rng.uniform() < 0.3 && r > lo && r < hi ? r : v;
}

inline ScenarioDoc random_scenario(Rng& rng) {
    ScenarioDoc d;
    const double half = messy(rng, 200, 3000);
    d.extent_min = {-half + messy(rng, -50, 50), -half + messy(rng, -50, 50)};
    d.extent_max = {half, half * messy(rng, 0.8, 1.2)};
    d.hover_elevation = messy(rng, 20, 150);
    const int nb = static_cast<int>(rng.below(6));
    for (int k = 0; k < nb; ++k) {
        const double x = messy(rng, d.extent_min.x, d.extent_max.x - 40);
        const double y = messy(rng, d.extent_min.y, d.extent_max.y - 40);
        d.buildings.push_back({{x, y}, {x + messy(rng, 1, 39), y + messy(rng, 1, 39)}, messy(rng, 1, 300)});
    }
    const int na = static_cast<int>(rng.below(6));
    for (int k = 0; k < na; ++k)
        d.aois.push_back({{messy(rng, d.extent_min.x, d.extent_max.x), messy(rng, d.extent_min.y, d.extent_max.y)},
                          messy(rng, 1, 500)});
    d.rf.frequency_hz = messy(rng, 1e8, 6e10);
    d.rf.power_dbm = messy(rng, 0, 50);
    d.rf.rx_height = messy(rng, 0, 3);
    d.rf.cell_size = messy(rng, 1, 50);
    d.rf.pattern = static_cast<PatternKind>(rng.below(3));
    d.rf.boresight_gain_dbi = messy(rng, 0, 20);
    auto& h = d.hyper;
    h.alpha = messy(rng, 0, 2);
    h.beta = messy(rng, 0, 2);
    h.gamma = messy(rng, 0, 2);
    h.eta = messy(rng, 0, 2);
    h.kappa_a = messy(rng, 1e-3, 1);
    h.kappa_b = messy(rng, 1e-3, 1);
    h.kappa_i = messy(rng, 1e-3, 1);
    h.d_min = messy(rng, 0, 800);
    h.c_b = messy(rng, 0, 40);
    h.rooftop_tolerance = messy(rng, 0, 40);
    h.grid = {1 + static_cast<int>(rng.below(9)), 1 + static_cast<int>(rng.below(9)), messy(rng, 0, 200)};
    h.attraction = rng.below(2) ? AttractionForm::shifted : AttractionForm::printed;
    h.learning_rate = messy(rng, 1e-3, 10);
    h.max_iterations = static_cast<int>(rng.below(5000));
    h.patience = 1 + static_cast<int>(rng.below(50));
    d.sir.beta_l = messy(rng, 0.1, 5);
    d.sir.xi = messy(rng, 0, 1);
    d.sir.temperature = messy(rng, 1, 100);
    d.sir.epsilon = std::ldexp(rng.uniform(0.5, 1.0), -60 - static_cast<int>(rng.below(40)));
    d.sir.mask_threshold = rng.below(2) ? -1.0 : std::ldexp(rng.uniform(0.5, 1.0), -50);
    d.num_abs = 1 + static_cast<int>(rng.below(30));
    d.seed = rng.next();
    return d;
}

inline DeploymentDoc random_deployment(Rng& rng) {
    DeploymentDoc d;
    const int n = static_cast<int>(rng.below(12));
    for (int k = 0; k < n; ++k)
        d.abs.push_back({k * 3 + static_cast<int>(rng.below(3)), messy(rng, -5000, 5000), messy(rng, -5000, 5000),
                         messy(rng, -360, 360), messy(rng, 180.0 / 7.0, 1080.0 / 7.0), messy(rng, 0, 43)});
    return d;
}

inline TrajectoryDoc random_trajectory(Rng& rng) {
    TrajectoryDoc d;
    d.step_seconds = messy(rng, 0.01, 10);
    const int n = static_cast<int>(rng.below(5));
    for (int k = 0; k < n; ++k) {
        EntityTrajectory e{(rng.below(2) ? "abs-" : "ue-") + std::to_string(k), rng.below(2) ? "abs" : "ue", {}};
        long step = static_cast<long>(rng.below(10));
        const int m = static_cast<int>(rng.below(40));
        for (int i = 0; i < m; ++i) {
            e.points.push_back({step, messy(rng, -3000, 3000), messy(rng, -3000, 3000)});
            step += 1 + static_cast<long>(rng.below(3));
        }
        d.entities.push_back(std::move(e));
    }
    return d;
}

inline DropReportDoc random_drop_report(Rng& rng) {
    DropReportDoc d;
    d.detector = {std::ldexp(rng.uniform(0.5, 1.0), -30 - static_cast<int>(rng.below(30))),
                  1 + static_cast<int>(rng.below(5)), static_cast<int>(rng.below(8))};
    int t = static_cast<int>(rng.below(5));
    const int n = static_cast<int>(rng.below(5));
    for (int k = 0; k < n; ++k) {
        const int len = static_cast<int>(rng.below(30));
        d.events.push_back({t, t + len});
        t += len + 1 + static_cast<int>(rng.below(10));
    }
    return d;
}

inline RecoverySchedule random_schedule(Rng& rng) {
    RecoverySchedule s;
    s.start = static_cast<int>(rng.below(100));
    s.end = s.start + 2 + static_cast<int>(rng.below(40));
    s.middle = (s.start + s.end) / 2;
    const int n = (s.end - s.start) / 2;
    for (int k = 0; k < n; ++k) s.reaction.push_back({messy(rng, -2000, 2000), messy(rng, -2000, 2000)});
    s.stationary = s.reaction.back();
    s.return_path.assign(s.reaction.rbegin(), s.reaction.rend());
    return s;
}

}  // namespace testdocs
