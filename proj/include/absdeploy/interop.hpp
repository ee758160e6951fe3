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
#include <iosfwd>
#include <string>
#include <vector>

#include "absdeploy/geometry.hpp"
#include "absdeploy/orient_power.hpp"
#include "absdeploy/placement.hpp"
#include "absdeploy/propagation.hpp"
#include "absdeploy/resilience.hpp"

namespace absdeploy {

// Version written into every document. Loaders accept any 1.x and reject
// other majors.
inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr int kSchemaMajor = 1;

struct RfConfig {
    double frequency_hz = 3.5e9;
    double power_dbm = 43.0;
    double rx_height = 1.5;
    double cell_size = 10.0;
    PatternKind pattern = PatternKind::directional_3gpp;
    double boresight_gain_dbi = 8.0;
    friend bool operator==(const RfConfig&, const RfConfig&) = default;
};

struct ScenarioDoc {
    Vec2 extent_min{-1000.0, -1000.0};
    Vec2 extent_max{1000.0, 1000.0};
    double hover_elevation = 70.0;
    std::vector<Building> buildings;
    std::vector<Aoi> aois;
    RfConfig rf;
    PlacementHyper hyper;
    SirLossConfig sir;
    int num_abs = 10;
    std::uint64_t seed = 0;

    Scene scene() const { return Scene(extent_min, extent_max, buildings, hover_elevation); }
    PropagationModel propagation() const;
    AntennaConfig antenna() const;
    friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

// Angles are kept in degrees exactly as written in the file.
struct DeployedAbs {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double azimuth_deg = 0.0;
    double tilt_deg = 90.0;
    double power_dbm = 43.0;
    friend bool operator==(const DeployedAbs&, const DeployedAbs&) = default;
};

struct DeploymentDoc {
    std::vector<DeployedAbs> abs;
    friend bool operator==(const DeploymentDoc&, const DeploymentDoc&) = default;

    std::vector<Vec2> positions() const;
    OrientPowerParams params() const;  // radians
    static DeploymentDoc from(std::span<const Vec2> positions, std::span<const AbsOrientation> params);
};

struct TrajectoryPoint {
    long step = 0;
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct EntityTrajectory {
    std::string id;
    std::string type;  // "abs" or "ue"
    std::vector<TrajectoryPoint> points;
    friend bool operator==(const EntityTrajectory&, const EntityTrajectory&) = default;
};

struct TrajectoryDoc {
    double step_seconds = 1.0;
    std::vector<EntityTrajectory> entities;
    friend bool operator==(const TrajectoryDoc&, const TrajectoryDoc&) = default;
};

struct DropReportDoc {
    DetectorConfig detector;
    std::vector<DropEvent> events;
    friend bool operator==(const DropReportDoc&, const DropReportDoc&) = default;
};

/// Recovery schedule as an ABS trajectory: reaction, stationary and return
/// phases on consecutive steps starting at t_s + 1.
TrajectoryDoc schedule_trajectory(const RecoverySchedule& schedule, const std::string& abs_id,
                                  double step_seconds = 1.0);

std::string to_json(const ScenarioDoc& doc);
std::string to_json(const DeploymentDoc& doc);
std::string to_json(const TrajectoryDoc& doc);
std::string to_json(const DropReportDoc& doc);
std::string to_json(const RecoverySchedule& schedule);

// Parsers throw ParseError naming the JSON pointer of the offending element.
ScenarioDoc parse_scenario(const std::string& text);
DeploymentDoc parse_deployment(const std::string& text);
TrajectoryDoc parse_trajectory(const std::string& text);
DropReportDoc parse_drop_report(const std::string& text);
RecoverySchedule parse_recovery_schedule(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

inline ScenarioDoc load_scenario(const std::string& path) { return parse_scenario(read_text_file(path)); }
inline DeploymentDoc load_deployment(const std::string& path) { return parse_deployment(read_text_file(path)); }
inline TrajectoryDoc load_trajectory(const std::string& path) { return parse_trajectory(read_text_file(path)); }
inline DropReportDoc load_drop_report(const std::string& path) { return parse_drop_report(read_text_file(path)); }

template <class Doc>
void save_document(const std::string& path, const Doc& doc) {
    write_text_file(path, to_json(doc));
}

// Comma separated, one row per line, values printed with 17 significant
// digits so that they read back exactly.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string format_double(double v);

}  // namespace absdeploy
