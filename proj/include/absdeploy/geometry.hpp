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

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace absdeploy {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

inline double norm(Vec3 v) { return std::hypot(v.x, v.y, v.z); }
inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Axis-aligned box building: footprint [min, max] extruded from the ground to
// `height`.
struct Building {
    Vec2 min;
    Vec2 max;
    double height = 0.0;

    bool contains_footprint(Vec2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    friend bool operator==(const Building&, const Building&) = default;
};

// Immutable after construction. The constructor validates every invariant and
// throws InvalidArgumentError on violation.
class Scene {
public:
    Scene(Vec2 extent_min, Vec2 extent_max, std::vector<Building> buildings, double hover_elevation);

    Vec2 extent_min() const { return extent_min_; }
    Vec2 extent_max() const { return extent_max_; }
    const std::vector<Building>& buildings() const { return buildings_; }
    double hover_elevation() const { return hover_elevation_; }

    bool contains(Vec2 p) const {
        return p.x >= extent_min_.x && p.x <= extent_max_.x && p.y >= extent_min_.y &&
               p.y <= extent_max_.y;
    }
    double diagonal() const { return distance(extent_min_, extent_max_); }
    Vec2 clamp(Vec2 p) const;

private:
    Vec2 extent_min_;
    Vec2 extent_max_;
    std::vector<Building> buildings_;
    double hover_elevation_;
};

struct Aoi {
    Vec2 center;
    double radius = 0.0;
    friend bool operator==(const Aoi&, const Aoi&) = default;
};

// Checks radius > 0 and center inside the extent.
void validate_aoi(const Scene& scene, const Aoi& aoi);

struct GridSpec {
    int points_x = 5;
    int points_y = 5;
    double margin = 150.0;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Evenly spaced reference points covering the extent minus `margin` on every
/// side. A single point on an axis sits at that axis' midpoint.
std::vector<Vec2> generate_grid(const Scene& scene, const GridSpec& spec);

/// Planar distance from `p` to the footprint of `b`; zero inside or on the
/// boundary.
double distance_to_building(Vec2 p, const Building& b);

/// Gradient of distance_to_building w.r.t. `p`. Zero inside the footprint.
Vec2 distance_to_building_gradient(Vec2 p, const Building& b);

/// Buildings whose roof reaches within `clearance` of the hover elevation
/// (height >= h - clearance). Only these enter the collision penalty.
std::vector<Building> blocking_buildings(const Scene& scene, double clearance);

// Signed clearance between a segment and the scene's building volumes.
struct Clearance {
    double value = std::numeric_limits<double>::infinity();
    // d(value)/d(segment start); zero when value is infinite.
    Vec3 grad_start;
};

/// Signed distance of a point to a building volume (negative inside). The
/// volume is the footprint extruded from below ground to the roof.
double box_signed_distance(Vec3 p, const Building& b);

/// Minimum signed clearance of segment tx->rx over all buildings. Negative
/// values are the deepest penetration depth, positive values the distance to
/// the nearest miss. +inf for a scene without buildings.
double los_clearance(Vec3 tx, Vec3 rx, const Scene& scene);

/// Same as los_clearance but over an explicit building list, also returning
/// the gradient w.r.t. `tx`. Clearances beyond `cutoff` come back as +inf so
/// distant buildings can be skipped.
Clearance los_clearance_with_gradient(Vec3 tx, Vec3 rx, std::span<const Building> buildings,
                                      double cutoff = std::numeric_limits<double>::infinity());

/// Rejection-sampled initial positions: inside the extent, outside every
/// blocking footprint and pairwise at least `min_sep` apart. Throws
/// InfeasibleInitError once `budget` candidate draws are exhausted.
std::vector<Vec2> semi_random_init(const Scene& scene, int n, std::uint64_t seed, double min_sep,
                                   double blocking_clearance = 15.0, int budget = 10000);

}  // namespace absdeploy
