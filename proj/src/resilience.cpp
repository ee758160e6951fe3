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

#include "absdeploy/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "absdeploy/optim.hpp"
#include "absdeploy/placement.hpp"
#include "absdeploy/random.hpp"

namespace absdeploy {

namespace {

// Liang-Barsky clip of segment ab against the footprint rectangle.
bool segment_hits_footprint(Vec2 a, Vec2 b, const Building& bld) {
    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double p0[2] = {a.x, a.y};
    const double lo[2] = {bld.min.x, bld.min.y};
    const double hi[2] = {bld.max.x, bld.max.y};
    for (int k = 0; k < 2; ++k) {
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

bool inside_any(Vec2 p, std::span<const Building> buildings) {
    return std::any_of(buildings.begin(), buildings.end(), [&](const Building& b) { return b.contains_footprint(p); });
}

bool leg_clear(Vec2 a, Vec2 b, std::span<const Building> buildings) {
    return std::none_of(buildings.begin(), buildings.end(),
                        [&](const Building& bld) { return segment_hits_footprint(a, b, bld); });
}

void check_track_args(int steps, double speed, double step_seconds) {
    if (steps < 1) throw InvalidArgumentError("a UE track needs at least one step");
    if (!(speed >= 0.0) || !std::isfinite(speed)) throw InvalidArgumentError("UE speed must be finite and non-negative");
    if (!(step_seconds > 0.0)) throw InvalidArgumentError("step duration must be positive");
}

}  // namespace

UeTrack simulate_ue_track(const Scene& scene, const Aoi& aoi, int steps, double speed, std::uint64_t seed,
                          double step_seconds) {
    check_track_args(steps, speed, step_seconds);
    validate_aoi(scene, aoi);
    const Vec2 lo{std::max(scene.extent_min().x, aoi.center.x - aoi.radius),
                  std::max(scene.extent_min().y, aoi.center.y - aoi.radius)};
    const Vec2 hi{std::min(scene.extent_max().x, aoi.center.x + aoi.radius),
                  std::min(scene.extent_max().y, aoi.center.y + aoi.radius)};
    const auto& buildings = scene.buildings();
    Rng rng(seed);
    auto draw = [&]() { return Vec2{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)}; };

    constexpr int kSpawnBudget = 10000;
    Vec2 pos;
    int attempts = 0;
    do {
        if (attempts++ >= kSpawnBudget)
            throw InfeasibleInitError("AOI spawn square is fully covered by building footprints");
        pos = draw();
    } while (inside_any(pos, buildings));

    constexpr int kLegBudget = 100;
    auto next_waypoint = [&](Vec2 from) -> std::optional<Vec2> {
        for (int k = 0; k < kLegBudget; ++k) {
            const Vec2 w = draw();
            if (!inside_any(w, buildings) && leg_clear(from, w, buildings)) return w;
        }
        return std::nullopt;
    };

    UeTrack track;
    track.step_seconds = step_seconds;
    track.positions.reserve(static_cast<std::size_t>(steps));
    track.positions.push_back(pos);
    std::optional<Vec2> target = speed > 0.0 ? next_waypoint(pos) : std::nullopt;
    for (int t = 1; t < steps; ++t) {
        double remaining = speed * step_seconds;
        for (int legs = 0; remaining > 0.0 && legs < 16; ++legs) {
            if (!target) {
                target = next_waypoint(pos);
                if (!target) break;
            }
            const double d = distance(pos, *target);
            if (d <= remaining) {
                pos = *target;
                remaining -= d;
                target.reset();
            } else {
                pos += (remaining / d) * (*target - pos);
                remaining = 0.0;
            }
        }
        track.positions.push_back(pos);
    }
    return track;
}

UeTrack simulate_ue_track(const Scene& scene, std::span<const Vec2> waypoints, int steps, double speed,
                          double step_seconds) {
    check_track_args(steps, speed, step_seconds);
    if (waypoints.empty()) throw InvalidArgumentError("waypoint list is empty");
    for (std::size_t k = 0; k < waypoints.size(); ++k) {
        if (!scene.contains(waypoints[k]))
            throw InvalidArgumentError("waypoint " + std::to_string(k) + " lies outside the scene");
        if (inside_any(waypoints[k], scene.buildings()))
            throw InvalidArgumentError("waypoint " + std::to_string(k) + " lies inside a building footprint");
    }
    std::vector<double> cum(waypoints.size(), 0.0);
    for (std::size_t k = 1; k < waypoints.size(); ++k) cum[k] = cum[k - 1] + distance(waypoints[k - 1], waypoints[k]);

    UeTrack track;
    track.step_seconds = step_seconds;
    track.positions.reserve(static_cast<std::size_t>(steps));
    std::size_t leg = 0;
    for (int t = 0; t < steps; ++t) {
        const double s = std::min(speed * step_seconds * t, cum.back());
        while (leg + 1 < cum.size() && cum[leg + 1] < s) ++leg;
        if (leg + 1 == cum.size()) {
            track.positions.push_back(waypoints.back());
            continue;
        }
        const double len = cum[leg + 1] - cum[leg];
        const double f = len > 0.0 ? (s - cum[leg]) / len : 0.0;
        track.positions.push_back(waypoints[leg] + f * (waypoints[leg + 1] - waypoints[leg]));
    }
    return track;
}

PowerSeries received_power_series(const UeTrack& track, const TxConfig& tx, const Scene& scene,
                                  const PropagationModel& model) {
    const double watts = tx.power_watts();
    PowerSeries out;
    out.reserve(track.steps());
    for (const Vec2 p : track.positions) out.push_back(watts * link_gain(tx, {p.x, p.y, model.rx_height}, scene, model));
    return out;
}

std::vector<DropEvent> detect_drops(std::span<const double> series, const DetectorConfig& cfg) {
    if (!(cfg.t_min > 0.0)) throw InvalidArgumentError("T_min must be positive");
    if (cfg.c_min < 1) throw InvalidArgumentError("c_min must be at least 1");
    if (cfg.s_p < 0) throw InvalidArgumentError("s_p must be non-negative");

    enum class State { idle, candidate, confirmed } state = State::idle;
    std::vector<DropEvent> events;
    int run_start = 0, below_count = 0, last_below = 0, peaks = 0;
    for (int t = 0; t < static_cast<int>(series.size()); ++t) {
        const bool below = series[static_cast<std::size_t>(t)] < cfg.t_min;
        switch (state) {
            case State::idle:
                if (!below) break;
                run_start = t;
                below_count = 0;
                state = State::candidate;
                [[fallthrough]];
            case State::candidate:
                if (!below) {
                    state = State::idle;
                    break;
                }
                if (++below_count >= cfg.c_min) {
                    state = State::confirmed;
                    last_below = t;
                    peaks = 0;
                }
                break;
            case State::confirmed:
                if (below) {
                    last_below = t;
                    peaks = 0;
                } else if (++peaks > cfg.s_p) {
                    events.push_back({run_start, last_below});
                    state = State::idle;
                }
                break;
        }
    }
    // A drop still open when the series ends closes at the final sample.
    if (state == State::confirmed) events.push_back({run_start, static_cast<int>(series.size()) - 1});
    return events;
}

std::vector<Vec2> recovery_trajectory(Vec2 start, Vec2 target, const Scene& scene, const RecoveryConfig& cfg) {
    if (!(cfg.learning_rate > 0.0)) throw InvalidArgumentError("learning rate must be positive");
    if (!(cfg.convergence_radius > 0.0)) throw InvalidArgumentError("convergence radius must be positive");
    if (cfg.patience < 1) throw InvalidArgumentError("patience must be at least 1");
    const auto blocking = blocking_buildings(scene, cfg.rooftop_tolerance);
    for (const auto& b : blocking)
        if (distance_to_building(target, b) < cfg.c_b)
            throw InvalidArgumentError("recovery target lies within c_b of a blocking building");

    std::vector<Vec2> trace{start};
    Vec2 p = start;
    if (distance(p, target) <= cfg.convergence_radius) return trace;

    Adam adam(2);
    double lr = cfg.learning_rate;
    double best = std::numeric_limits<double>::infinity();
    int since_best = 0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const Vec2 pos[1] = {p};
        const double dist = distance(p, target);
        const double loss = dist + collision_penalty(pos, blocking, cfg.kappa_b, cfg.c_b);
        if (!std::isfinite(loss))
            throw RecoveryConvergenceError("recovery loss became non-finite", std::move(trace));
        if (loss < best) {
            best = loss;
            since_best = 0;
        } else if (++since_best >= cfg.patience) {
            lr = std::max(cfg.min_learning_rate, lr * cfg.decay);
            since_best = 0;
        }
        Vec2 g[1] = {(1.0 / dist) * (p - target)};
        collision_penalty_gradient(pos, blocking, cfg.kappa_b, cfg.c_b, g);
        double params[2] = {p.x, p.y};
        const double grads[2] = {g[0].x, g[0].y};
        adam.step(params, grads, lr);
        p = {params[0], params[1]};
        trace.push_back(p);
        if (distance(p, target) <= cfg.convergence_radius) return trace;
    }
    throw RecoveryConvergenceError("recovery trajectory did not reach the target within " +
                                       std::to_string(cfg.max_iterations) + " iterations",
                                   std::move(trace));
}

std::optional<Vec2> RecoverySchedule::position_at(int step) const {
    if (step > start && step <= middle) return reaction[static_cast<std::size_t>(step - start - 1)];
    if (step > middle && step <= end) return stationary;
    return std::nullopt;
}

RecoverySchedule build_recovery_schedule(std::span<const Vec2> trajectory, const DropEvent& drop) {
    if (trajectory.empty()) throw InvalidArgumentError("recovery trajectory is empty");
    if (drop.duration() < 2)
        throw DegenerateDropError("drop of duration " + std::to_string(drop.duration()) +
                                  " has no middle step strictly inside it");
    RecoverySchedule s;
    s.start = drop.start;
    s.middle = drop.middle();
    s.end = drop.end;
    const int n = drop.duration() / 2;

    std::vector<double> cum(trajectory.size(), 0.0);
    for (std::size_t k = 1; k < trajectory.size(); ++k)
        cum[k] = cum[k - 1] + distance(trajectory[k - 1], trajectory[k]);
    const double total = cum.back();
    std::size_t leg = 0;
    for (int k = 1; k <= n; ++k) {
        const double target = total * k / n;
        while (leg + 1 < cum.size() && cum[leg + 1] < target) ++leg;
        if (leg + 1 >= cum.size() || k == n) {
            s.reaction.push_back(trajectory.back());
            continue;
        }
        const double len = cum[leg + 1] - cum[leg];
        const double f = len > 0.0 ? (target - cum[leg]) / len : 0.0;
        s.reaction.push_back(trajectory[leg] + f * (trajectory[leg + 1] - trajectory[leg]));
    }
    s.stationary = trajectory.back();
    s.return_path.assign(s.reaction.rbegin(), s.reaction.rend());
    return s;
}

PowerSeries apply_recovery(const UeTrack& track, std::span<const double> before, const RecoverySchedule& schedule,
                           const TxConfig& tx, const Scene& scene, const PropagationModel& model) {
    if (before.size() != track.steps()) throw InvalidArgumentError("power series and track lengths differ");
    if (schedule.start < 0 || schedule.end >= static_cast<int>(track.steps()))
        throw InvalidArgumentError("recovery schedule extends beyond the track");
    PowerSeries out(before.begin(), before.end());
    const double watts = tx.power_watts();
    for (int t = schedule.start + 1; t <= schedule.end; ++t) {
        TxConfig moved = tx;
        const Vec2 p = *schedule.position_at(t);
        moved.position.x = p.x;
        moved.position.y = p.y;
        const Vec2 ue = track.positions[static_cast<std::size_t>(t)];
        out[static_cast<std::size_t>(t)] = watts * link_gain(moved, {ue.x, ue.y, model.rx_height}, scene, model);
    }
    return out;
}

}  // namespace absdeploy
