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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absdeploy/errors.hpp"
#include "absdeploy/geometry.hpp"
#include "absdeploy/propagation.hpp"

namespace absdeploy {

// UE positions sampled at a uniform step duration.
struct UeTrack {
    std::vector<Vec2> positions;
    double step_seconds = 1.0;

    std::size_t steps() const { return positions.size(); }
};

// Received power in Watts, one value per track step.
using PowerSeries = std::vector<double>;

struct DropEvent {
    int start = 0;  // t_s, first sample of the confirmed below-threshold run
    int end = 0;    // t_e, last below-threshold sample, or the final sample if still open
    int duration() const { return end - start; }
    int middle() const { return (start + end) / 2; }
    friend bool operator==(const DropEvent&, const DropEvent&) = default;
};

struct DetectorConfig {
    double t_min = 1e-14;  // W
    int c_min = 3;
    int s_p = 5;
    friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

/// Random waypoint walk inside the AOI spawn square (side 2r, clipped to the
/// scene). Positions and straight legs avoid building footprints.
UeTrack simulate_ue_track(const Scene& scene, const Aoi& aoi, int steps, double speed, std::uint64_t seed,
                          double step_seconds = 1.0);

/// Walk along a fixed polyline at constant speed; the UE stops at the last
/// waypoint.
UeTrack simulate_ue_track(const Scene& scene, std::span<const Vec2> waypoints, int steps, double speed,
                          double step_seconds = 1.0);

/// P_tx * link_gain(tx, UE) per step, UE at the model's receiver height.
PowerSeries received_power_series(const UeTrack& track, const TxConfig& tx, const Scene& scene,
                                  const PropagationModel& model = {});

std::vector<DropEvent> detect_drops(std::span<const double> series, const DetectorConfig& cfg);

struct RecoveryConfig {
    double learning_rate = 6.0;
    double decay = 0.5;
    int patience = 3;
    // Plateau decay never goes below this step scale.
    double min_learning_rate = 0.5;
    double convergence_radius = 5.0;
    int max_iterations = 2000;
    double kappa_b = 0.5;
    double c_b = 15.0;
    double rooftop_tolerance = 15.0;
};

class RecoveryConvergenceError : public ConvergenceError {
public:
    RecoveryConvergenceError(const std::string& what, std::vector<Vec2> trace)
        : ConvergenceError(what), trace_(std::move(trace)) {}
    const std::vector<Vec2>& trace() const { return trace_; }

private:
    std::vector<Vec2> trace_;
};

/// Adam on ||p - target|| + P_b starting at `start`. Returns every iterate,
/// starting with `start` and ending within the convergence radius of the
/// target.
std::vector<Vec2> recovery_trajectory(Vec2 start, Vec2 target, const Scene& scene, const RecoveryConfig& cfg = {});

struct RecoverySchedule {
    int start = 0;  // t_s
    int middle = 0; // t_m
    int end = 0;    // t_e
    std::vector<Vec2> reaction;      // steps t_s+1 .. t_m
    Vec2 stationary;                 // steps t_m+1 .. t_e
    std::vector<Vec2> return_path;   // reaction reversed, flown after t_e

    /// ABS position commanded at `step`, or nothing outside (t_s, t_e].
    std::optional<Vec2> position_at(int step) const;
    friend bool operator==(const RecoverySchedule&, const RecoverySchedule&) = default;
};

/// Resamples the trajectory at floor(T_d / 2) equal arc-length fractions.
RecoverySchedule build_recovery_schedule(std::span<const Vec2> trajectory, const DropEvent& drop);

/// Recomputes the series with the ABS following the schedule inside the drop
/// interval; every other step is copied from `before`.
PowerSeries apply_recovery(const UeTrack& track, std::span<const double> before, const RecoverySchedule& schedule,
                           const TxConfig& tx, const Scene& scene, const PropagationModel& model = {});

}  // namespace absdeploy
