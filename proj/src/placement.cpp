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

#include "absdeploy/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absdeploy/optim.hpp"

namespace absdeploy {

namespace {

// Unit vector from b to a; zero when coincident.
Vec2 unit(Vec2 a, Vec2 b, double d) { return d > 0.0 ? (1.0 / d) * (a - b) : Vec2{}; }

double attraction_exp(double d, double r, double kappa_a, AttractionForm form) {
    return form == AttractionForm::printed ? std::exp(-kappa_a * d - r) : std::exp(-kappa_a * (d - r));
}

}  // namespace

double coverage_factor(std::span<const Vec2> positions, std::span<const Vec2> grid_points) {
    double k = 0.0;
    for (const auto g : grid_points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto p : positions) best = std::min(best, distance(g, p));
        k += best;
    }
    return k;
}

double repulsion_penalty(std::span<const Vec2> positions, double d_min) {
    double pu = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = 0; j < positions.size(); ++j)
            if (i != j) pu += std::max(0.0, d_min - distance(positions[i], positions[j]));
    return pu;
}

double smooth_sigmoid(double z, double t, double kappa) {
    const double x = kappa * (z - t);
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double aoi_weight(std::span<const Vec2> positions, const Aoi& aoi, double kappa_i) {
    const double threshold = 2.0 * aoi.radius / 3.0;
    double s = 0.0;
    for (const auto p : positions) s += smooth_sigmoid(distance(p, aoi.center), threshold, -kappa_i);
    return std::exp(-s);
}

double attraction_penalty(std::span<const Vec2> positions, std::span<const Aoi> aois, double kappa_a,
                          double kappa_i, AttractionForm form) {
    double pa = 0.0;
    for (const auto& aoi : aois) {
        const double w = aoi_weight(positions, aoi, kappa_i);
        for (const auto p : positions) {
            const double d = distance(p, aoi.center);
            pa += w * d - (1.0 - w) * attraction_exp(d, aoi.radius, kappa_a, form);
        }
    }
    return pa;
}

double collision_penalty(std::span<const Vec2> positions, std::span<const Building> blocking, double kappa_b,
                         double c_b) {
    double pb = 0.0;
    for (const auto p : positions)
        for (const auto& b : blocking) pb += std::exp(kappa_b * (-distance_to_building(p, b) + c_b));
    return pb;
}

void collision_penalty_gradient(std::span<const Vec2> positions, std::span<const Building> blocking,
                                double kappa_b, double c_b, std::span<Vec2> grad, double scale) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (const auto& b : blocking) {
            const double e = std::exp(kappa_b * (-distance_to_building(positions[i], b) + c_b));
            grad[i] -= (scale * kappa_b * e) * distance_to_building_gradient(positions[i], b);
        }
    }
}

PlacementObjective::PlacementObjective(const Scene& scene, std::vector<Aoi> aois, const PlacementHyper& hyper)
    : aois_(std::move(aois)), hyper_(hyper), grid_(generate_grid(scene, hyper.grid)),
      blocking_(blocking_buildings(scene, hyper.rooftop_tolerance)) {
    if (!(hyper.kappa_a > 0.0 && hyper.kappa_b > 0.0 && hyper.kappa_i > 0.0))
        throw InvalidArgumentError("placement steepness factors must be positive");
    if (hyper.d_min < 0.0 || hyper.c_b < 0.0)
        throw InvalidArgumentError("d_min and c_b must be non-negative");
}

PlacementTerms PlacementObjective::terms(std::span<const Vec2> positions) const {
    PlacementTerms t;
    t.coverage = coverage_factor(positions, grid_);
    t.attraction = attraction_penalty(positions, aois_, hyper_.kappa_a, hyper_.kappa_i, hyper_.attraction);
    t.repulsion = repulsion_penalty(positions, hyper_.d_min);
    t.collision = collision_penalty(positions, blocking_, hyper_.kappa_b, hyper_.c_b);
    t.total = -hyper_.alpha * t.coverage + hyper_.beta * t.attraction + hyper_.gamma * t.repulsion +
              hyper_.eta * t.collision;
    return t;
}

std::vector<Vec2> PlacementObjective::gradient(std::span<const Vec2> positions) const {
    const std::size_t n = positions.size();
    std::vector<Vec2> grad(n);
    if (n == 0) return grad;

    // -alpha K: only the nearest ABS of each grid point moves K.
    for (const auto g : grid_) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double d = distance(g, positions[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        grad[best] -= hyper_.alpha * unit(positions[best], g, best_d);
    }

    // gamma P_u: each unordered pair appears twice in the ordered sum.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = distance(positions[i], positions[j]);
            if (d < hyper_.d_min) grad[i] -= (2.0 * hyper_.gamma) * unit(positions[i], positions[j], d);
        }
    }

    // beta P_a
    const double ka = hyper_.kappa_a;
    const double ki = hyper_.kappa_i;
    std::vector<double> dist(n), sig(n), ex(n);
    for (const auto& aoi : aois_) {
        const double threshold = 2.0 * aoi.radius / 3.0;
        double s = 0.0, dsum = 0.0, esum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dist[i] = distance(positions[i], aoi.center);
            sig[i] = smooth_sigmoid(dist[i], threshold, -ki);
            ex[i] = attraction_exp(dist[i], aoi.radius, ka, hyper_.attraction);
            s += sig[i];
            dsum += dist[i];
            esum += ex[i];
        }
        const double w = std::exp(-s);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 u = unit(positions[i], aoi.center, dist[i]);
            // d sigma(d, t, -ki)/dd = -ki sigma (1 - sigma); d w/d p_i = -w * that * u.
            const double dw = w * ki * sig[i] * (1.0 - sig[i]);
            const double coeff = dw * (dsum + esum) + w + (1.0 - w) * ka * ex[i];
            grad[i] += (hyper_.beta * coeff) * u;
        }
    }

    collision_penalty_gradient(positions, blocking_, hyper_.kappa_b, hyper_.c_b, grad, hyper_.eta);
    return grad;
}

double placement_loss(std::span<const Vec2> positions, const Scene& scene, std::span<const Aoi> aois,
                      const PlacementHyper& hyper) {
    return PlacementObjective(scene, {aois.begin(), aois.end()}, hyper).loss(positions);
}

std::vector<Vec2> placement_gradient(std::span<const Vec2> positions, const Scene& scene,
                                     std::span<const Aoi> aois, const PlacementHyper& hyper) {
    return PlacementObjective(scene, {aois.begin(), aois.end()}, hyper).gradient(positions);
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::early_stop: return "early_stop";
        case StopReason::diverged: return "diverged";
        case StopReason::converged: return "converged";
    }
    return "unknown";
}

PlacementResult optimize_placement(const Scene& scene, std::span<const Aoi> aois,
                                   std::span<const Vec2> init_positions, const PlacementHyper& hyper,
                                   std::uint64_t /*seed*/) {
    const PlacementObjective objective(scene, {aois.begin(), aois.end()}, hyper);
    std::vector<Vec2> pos(init_positions.begin(), init_positions.end());
    PlacementResult result;
    result.positions = pos;
    auto& trace = result.trace;
    trace.best_loss = std::numeric_limits<double>::infinity();

    const std::size_t n = pos.size();
    Adam adam(2 * n);
    std::vector<double> flat(2 * n), flat_grad(2 * n);
    int since_best = 0;
    for (int it = 0; it < hyper.max_iterations; ++it) {
        const double loss = objective.loss(pos);
        trace.positions.push_back(pos);
        trace.loss.push_back(loss);
        if (!std::isfinite(loss)) {
            trace.reason = StopReason::diverged;
            throw PlacementDivergedError("placement loss became non-finite at iteration " + std::to_string(it),
                                         std::move(trace));
        }
        if (loss < trace.best_loss) {
            trace.best_loss = loss;
            trace.best_index = trace.loss.size() - 1;
            since_best = 0;
        } else if (++since_best >= hyper.patience) {
            trace.reason = StopReason::early_stop;
            break;
        }
        const auto grad = objective.gradient(pos);
        for (std::size_t i = 0; i < n; ++i) {
            flat[2 * i] = pos[i].x;
            flat[2 * i + 1] = pos[i].y;
            flat_grad[2 * i] = grad[i].x;
            flat_grad[2 * i + 1] = grad[i].y;
        }
        adam.step(flat, flat_grad, hyper.learning_rate);
        for (std::size_t i = 0; i < n; ++i) pos[i] = {flat[2 * i], flat[2 * i + 1]};
    }
    if (!trace.positions.empty()) result.positions = trace.positions[trace.best_index];
    return result;
}

double aoi_satisfaction(std::span<const Vec2> positions, std::span<const Aoi> aois) {
    if (aois.empty()) throw UndefinedMetricError("AOI satisfaction is undefined without AOIs");
    int served = 0;
    for (const auto& aoi : aois) {
        const double threshold = 2.0 * aoi.radius / 3.0;
        const bool any = std::any_of(positions.begin(), positions.end(),
                                     [&](Vec2 p) { return distance(p, aoi.center) <= threshold; });
        served += any ? 1 : 0;
    }
    return static_cast<double>(served) / static_cast<double>(aois.size());
}

}  // namespace absdeploy
