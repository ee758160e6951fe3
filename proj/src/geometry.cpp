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

#include "absdeploy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "absdeploy/errors.hpp"
#include "absdeploy/random.hpp"

namespace absdeploy {

Scene::Scene(Vec2 extent_min, Vec2 extent_max, std::vector<Building> buildings, double hover_elevation)
    : extent_min_(extent_min), extent_max_(extent_max), buildings_(std::move(buildings)),
      hover_elevation_(hover_elevation) {
    if (!(extent_min_.x < extent_max_.x) || !(extent_min_.y < extent_max_.y))
        throw InvalidArgumentError("scene extent_min must be < extent_max componentwise");
    if (!(hover_elevation_ > 0.0) || !std::isfinite(hover_elevation_))
        throw InvalidArgumentError("hover elevation must be positive");
    for (std::size_t i = 0; i < buildings_.size(); ++i) {
        const auto& b = buildings_[i];
        const std::string tag = "building " + std::to_string(i);
        if (!(b.min.x < b.max.x) || !(b.min.y < b.max.y))
            throw InvalidArgumentError(tag + ": bbox min must be < max");
        if (!(b.height > 0.0)) throw InvalidArgumentError(tag + ": height must be positive");
        if (!contains(b.min) || !contains(b.max))
            throw InvalidArgumentError(tag + ": footprint outside scene extent");
    }
}

Vec2 Scene::clamp(Vec2 p) const {
    return {std::clamp(p.x, extent_min_.x, extent_max_.x), std::clamp(p.y, extent_min_.y, extent_max_.y)};
}

void validate_aoi(const Scene& scene, const Aoi& aoi) {
    if (!(aoi.radius > 0.0)) throw InvalidArgumentError("AOI radius must be positive");
    if (!scene.contains(aoi.center)) throw InvalidArgumentError("AOI center outside scene extent");
}

namespace {

std::vector<double> axis_points(double lo, double hi, int count, double margin, const char* axis) {
    if (count < 1) throw InvalidSpecError(std::string("grid needs at least one point along ") + axis);
    if (margin < 0.0) throw InvalidSpecError("grid margin must be non-negative");
    const double a = lo + margin;
    const double b = hi - margin;
    if (a > b || (count > 1 && a >= b))
        throw InvalidSpecError(std::string("grid margin too large for extent along ") + axis);
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = 0.5 * (lo + hi);
        return out;
    }
    const double step = (b - a) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = a + step * i;
    out.back() = b;
    return out;
}

}  // namespace

std::vector<Vec2> generate_grid(const Scene& scene, const GridSpec& spec) {
    const auto xs = axis_points(scene.extent_min().x, scene.extent_max().x, spec.points_x, spec.margin, "x");
    const auto ys = axis_points(scene.extent_min().y, scene.extent_max().y, spec.points_y, spec.margin, "y");
    std::vector<Vec2> grid;
    grid.reserve(xs.size() * ys.size());
    for (double y : ys)
        for (double x : xs) grid.push_back({x, y});
    return grid;
}

double distance_to_building(Vec2 p, const Building& b) {
    const double dx = std::max(std::max(b.min.x - p.x, p.x - b.max.x), 0.0);
    const double dy = std::max(std::max(b.min.y - p.y, p.y - b.max.y), 0.0);
    return std::hypot(dx, dy);
}

Vec2 distance_to_building_gradient(Vec2 p, const Building& b) {
    double dx = 0.0, sx = 0.0;
    if (b.min.x - p.x > 0.0) {
        dx = b.min.x - p.x;
        sx = -1.0;
    } else if (p.x - b.max.x > 0.0) {
        dx = p.x - b.max.x;
        sx = 1.0;
    }
    double dy = 0.0, sy = 0.0;
    if (b.min.y - p.y > 0.0) {
        dy = b.min.y - p.y;
        sy = -1.0;
    } else if (p.y - b.max.y > 0.0) {
        dy = p.y - b.max.y;
        sy = 1.0;
    }
    const double d = std::hypot(dx, dy);
    if (d == 0.0) return {};
    return {sx * dx / d, sy * dy / d};
}

std::vector<Building> blocking_buildings(const Scene& scene, double clearance) {
    if (clearance < 0.0) throw InvalidArgumentError("blocking clearance must be non-negative");
    const double threshold = scene.hover_elevation() - clearance;
    std::vector<Building> out;
    for (const auto& b : scene.buildings())
        if (b.height >= threshold) out.push_back(b);
    return out;
}

namespace {

struct SignedDistance {
    double value;
    Vec3 grad;
};

// Footprint extruded from below ground up to the roof: only the top face
// bounds the volume vertically, so rays cannot pass underneath.
SignedDistance box_sdf(Vec3 p, const Building& b) {
    const double pc[2] = {p.x - 0.5 * (b.min.x + b.max.x), p.y - 0.5 * (b.min.y + b.max.y)};
    const double half[2] = {0.5 * (b.max.x - b.min.x), 0.5 * (b.max.y - b.min.y)};
    double q[3];
    double sgn[3];
    for (int k = 0; k < 2; ++k) {
        q[k] = std::abs(pc[k]) - half[k];
        sgn[k] = pc[k] >= 0.0 ? 1.0 : -1.0;
    }
    q[2] = p.z - b.height;
    sgn[2] = 1.0;
    const double qmax = std::max({q[0], q[1], q[2]});
    if (qmax > 0.0) {
        const double o[3] = {std::max(q[0], 0.0), std::max(q[1], 0.0), std::max(q[2], 0.0)};
        const double d = std::hypot(o[0], o[1], o[2]);
        return {d, {sgn[0] * o[0] / d, sgn[1] * o[1] / d, sgn[2] * o[2] / d}};
    }
    const int k = q[0] >= q[1] ? (q[0] >= q[2] ? 0 : 2) : (q[1] >= q[2] ? 1 : 2);
    Vec3 g;
    (k == 0 ? g.x : k == 1 ? g.y : g.z) = sgn[k];
    return {qmax, g};
}

// Does the segment touch the box [lo, hi]?
bool segment_hits_aabb(Vec3 a, Vec3 b, const double lo[3], const double hi[3]) {
    const double p0[3] = {a.x, a.y, a.z};
    const double d[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
    double t0 = 0.0, t1 = 1.0;
    for (int k = 0; k < 3; ++k) {
        if (d[k] == 0.0) {
            if (p0[k] < lo[k] || p0[k] > hi[k]) return false;
            continue;
        }
        double ta = (lo[k] - p0[k]) / d[k];
        double tb = (hi[k] - p0[k]) / d[k];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    return true;
}

// Inside the box the sdf is the max of five face planes, so along a
// penetrating segment the minimum is a small LP: the optimum sits at an
// endpoint or where two planes cross. Returns nullopt when the segment stays
// outside, where the sdf is smooth and the caller falls back to a search.
std::optional<SignedDistance> penetration(Vec3 a, Vec3 b, const Building& box) {
    const Vec3 d = b - a;
    const Vec3 n[5] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
    const double off[5] = {box.max.x, -box.min.x, box.max.y, -box.min.y, box.height};
    double alpha[5], slope[5];
    for (int f = 0; f < 5; ++f) {
        alpha[f] = dot(n[f], a) - off[f];
        slope[f] = dot(n[f], d);
    }
    auto upper = [&](double t) {
        double m = -std::numeric_limits<double>::infinity();
        for (int f = 0; f < 5; ++f) m = std::max(m, alpha[f] + slope[f] * t);
        return m;
    };
    // Candidate (t, i, j): j < 0 marks an endpoint with a single active plane.
    double best = std::numeric_limits<double>::infinity(), best_t = 0.0;
    int bi = -1, bj = -1;
    auto consider = [&](double t, int i, int j) {
        const double v = upper(t);
        if (v < best) {
            best = v;
            best_t = t;
            bi = i;
            bj = j;
        }
    };
    for (double t : {0.0, 1.0}) consider(t, -1, -1);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            if (slope[i] == slope[j]) continue;
            const double t = (alpha[j] - alpha[i]) / (slope[i] - slope[j]);
            if (!(t > 0.0 && t < 1.0)) continue;
            // Opposite faces can cross at the same t below the envelope;
            // only a pair that attains the max defines the optimum.
            const double v = alpha[i] + slope[i] * t, top = upper(t);
            if (v >= top - 1e-12 * (1.0 + std::abs(top))) consider(t, i, j);
        }
    if (best > 0.0) return std::nullopt;

    const double t = best_t;
    if (bj < 0) {
        // Endpoint optimum: the gradient is that of the active plane.
        int f = 0;
        for (int k = 1; k < 5; ++k)
            if (alpha[k] + slope[k] * t > alpha[f] + slope[f] * t) f = k;
        return SignedDistance{best, (1.0 - t) * n[f]};
    }
    // Two planes tie at t(a): differentiate the crossing implicitly.
    const Vec3 gi = n[bi], gij = n[bi] - n[bj];
    const double den = dot(gij, d);
    return SignedDistance{best, (1.0 - t) * (gi - (dot(gi, d) / den) * gij)};
}

// f(t) = sdf(a + t (b - a)) is convex on [0, 1]; golden-section search.
SignedDistance segment_box_clearance(Vec3 a, Vec3 b, const Building& box) {
    if (auto inside = penetration(a, b, box)) return *inside;
    const Vec3 d = b - a;
    auto f = [&](double t) { return box_sdf(a + t * d, box).value; };
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    double t = 0.5 * (lo + hi);
    double best = f(t);
    for (double cand : {0.0, 1.0}) {
        const double v = f(cand);
        if (v < best) {
            best = v;
            t = cand;
        }
    }
    const auto sd = box_sdf(a + t * d, box);
    // Envelope theorem: d/da min_t sdf(a + t (b - a)) = grad sdf * (1 - t).
    return {sd.value, (1.0 - t) * sd.grad};
}

}  // namespace

double box_signed_distance(Vec3 p, const Building& b) { return box_sdf(p, b).value; }

Clearance los_clearance_with_gradient(Vec3 tx, Vec3 rx, std::span<const Building> buildings, double cutoff) {
    Clearance out;
    out.value = std::numeric_limits<double>::infinity();
    for (const auto& b : buildings) {
        if (std::isfinite(cutoff)) {
            const double lo[3] = {b.min.x - cutoff, b.min.y - cutoff, -std::numeric_limits<double>::infinity()};
            const double hi[3] = {b.max.x + cutoff, b.max.y + cutoff, b.height + cutoff};
            if (!segment_hits_aabb(tx, rx, lo, hi)) continue;
        }
        const auto c = segment_box_clearance(tx, rx, b);
        if (c.value < out.value) {
            out.value = c.value;
            out.grad_start = c.grad;
        }
    }
    // Beyond the cutoff the line of sight counts as fully clear.
    if (out.value > cutoff) return Clearance{std::numeric_limits<double>::infinity(), {}};
    return out;
}

double los_clearance(Vec3 tx, Vec3 rx, const Scene& scene) {
    return los_clearance_with_gradient(tx, rx, scene.buildings()).value;
}

std::vector<Vec2> semi_random_init(const Scene& scene, int n, std::uint64_t seed, double min_sep,
                                   double blocking_clearance, int budget) {
    if (n < 0) throw InvalidArgumentError("ABS count must be non-negative");
    const auto blocking = blocking_buildings(scene, blocking_clearance);
    Rng rng(seed);
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(n));
    int attempts = 0;
    while (static_cast<int>(points.size()) < n) {
        if (attempts++ >= budget)
            throw InfeasibleInitError("semi-random init exhausted its budget of " + std::to_string(budget) +
                                      " draws after placing " + std::to_string(points.size()) + " of " +
                                      std::to_string(n) + " ABSs");
        const Vec2 p{rng.uniform(scene.extent_min().x, scene.extent_max().x),
                     rng.uniform(scene.extent_min().y, scene.extent_max().y)};
        const bool in_building =
            std::any_of(blocking.begin(), blocking.end(), [&](const Building& b) { return b.contains_footprint(p); });
        if (in_building) continue;
        const bool too_close =
            std::any_of(points.begin(), points.end(), [&](Vec2 q) { return distance(p, q) < min_sep; });
        if (too_close) continue;
        points.push_back(p);
    }
    return points;
}

}  // namespace absdeploy
