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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "absdeploy/geometry.hpp"
#include "absdeploy/units.hpp"

namespace absdeploy {

enum class PatternKind { directional_3gpp, halfwave_dipole, isotropic };

std::string to_string(PatternKind k);
PatternKind pattern_from_string(const std::string& s);

// Mechanical orientation of an antenna panel. Boresight direction is
// (cos az cos tilt, sin az cos tilt, -sin tilt): tilt = pi/2 faces the ground.
struct AntennaConfig {
    PatternKind pattern = PatternKind::directional_3gpp;
    double azimuth = 0.0;                  // rad
    double tilt = std::numbers::pi / 2.0;  // rad
    double boresight_gain_dbi = 8.0;
};

struct TxConfig {
    Vec3 position;
    AntennaConfig antenna;
    double power_dbm = 43.0;

    double power_watts() const { return dbm_to_watts(power_dbm); }
};

/// 3GPP TR 38.901 single-element pattern. `azimuth_off` is the local azimuth
/// (0 at boresight) and `zenith_off` the local zenith angle (pi/2 at
/// boresight), both in radians. With `smooth` set, the hard minima are
/// replaced by a log-sum-exp smooth minimum of the given sharpness (in dB).
double element_gain_directional(double azimuth_off, double zenith_off, double boresight_gain_dbi = 8.0,
                                bool smooth = false, double sharpness = 20.0);

/// Half-wave dipole, peak 2.15 dBi broadside. `zenith` is measured from the
/// dipole axis; the gain tends to zero on the axis.
double element_gain_dipole(double zenith);

/// (lambda / (4 pi d))^2. Throws DomainError for d <= 0.
double free_space_gain(double distance, double frequency_hz);

/// Smooth step from `floor` (deep blockage) to 1 (clear line of sight).
double occlusion_factor(double clearance, double softness = 5.0, double floor = 1e-3);

// Knobs of the deterministic propagation surrogate.
struct PropagationModel {
    double frequency_hz = 3.5e9;
    double occlusion_softness = 5.0;
    double occlusion_floor = 1e-3;  // 30 dB penetration loss
    double rx_height = 1.5;
    PatternKind rx_pattern = PatternKind::halfwave_dipole;
    bool smooth_pattern = false;
    double pattern_sharpness = 20.0;
    // Clearances beyond this are treated as fully clear; keeps the building
    // loop cheap. The occlusion factor there differs from 1 by < 3e-9.
    double clearance_cutoff = 100.0;
};

/// Path gain for a single tx/rx link, including both antenna patterns and the
/// occlusion factor.
double link_gain(const TxConfig& tx, Vec3 rx, const Scene& scene, const PropagationModel& model);

// Ground-plane discretization. Cell (ix, iy) has its center at
// origin + ((ix + 0.5) cell_size, (iy + 0.5) cell_size).
struct CoverageGrid {
    Vec2 origin;
    double cell_size = 10.0;
    int nx = 0;
    int ny = 0;

    static CoverageGrid covering(const Scene& scene, double cell_size);
    Vec2 cell_center(int ix, int iy) const {
        return {origin.x + (ix + 0.5) * cell_size, origin.y + (iy + 0.5) * cell_size};
    }
    std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    friend bool operator==(const CoverageGrid&, const CoverageGrid&) = default;
};

// Per-transmitter linear path gains. Storage order is [tx][ix][iy] with iy
// varying fastest.
struct CoverageMap {
    CoverageGrid grid;
    double frequency_hz = 3.5e9;
    int num_tx = 0;
    std::vector<double> gains;
    // False for maps imported from files: no gradient information exists.
    bool differentiable = true;

    std::size_t index(int tx, int ix, int iy) const {
        return (static_cast<std::size_t>(tx) * static_cast<std::size_t>(grid.nx) + static_cast<std::size_t>(ix)) *
                   static_cast<std::size_t>(grid.ny) +
               static_cast<std::size_t>(iy);
    }
    double at(int tx, int ix, int iy) const { return gains[index(tx, ix, iy)]; }
    std::span<const double> tx_gains(int tx) const {
        return std::span<const double>(gains).subspan(static_cast<std::size_t>(tx) * grid.cells(), grid.cells());
    }
};

// d(gain)/d(x, y, azimuth, tilt) of the owning transmitter, same layout as
// CoverageMap::gains.
using GainJacobian = std::vector<std::array<double, 4>>;

CoverageMap compute_coverage_map(const Scene& scene, std::span<const TxConfig> txs, const CoverageGrid& grid,
                                 const PropagationModel& model);

/// Same map plus the jacobian of every gain w.r.t. its transmitter's
/// (x, y, azimuth, tilt). Always evaluates the smooth pattern variant.
CoverageMap compute_coverage_map(const Scene& scene, std::span<const TxConfig> txs, const CoverageGrid& grid,
                                 const PropagationModel& model, GainJacobian& jacobian);

/// RSS in Watts, same layout as the map.
std::vector<double> rss(const CoverageMap& map, std::span<const double> p_tx_watts);

/// Mask threshold that separates "no coverage" cells: blockage floor times the
/// free-space gain across the scene diagonal.
double default_mask_threshold(const Scene& scene, const PropagationModel& model);

// Binary coverage-map format, little endian:
//   char[8] "ABSCMAP\0", u32 version (=1), u32 N, u32 C_x, u32 C_y,
//   f64 origin_x, f64 origin_y, f64 cell_size, f64 f_c,
//   f64 gains[N * C_x * C_y] in [tx][ix][iy] order.
void write_coverage_map(std::ostream& os, const CoverageMap& map);
CoverageMap read_coverage_map(std::istream& is);
void save_coverage_map(const std::string& path, const CoverageMap& map);
CoverageMap load_coverage_map(const std::string& path);

}  // namespace absdeploy
