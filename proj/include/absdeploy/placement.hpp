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
#include <span>
#include <string>
#include <vector>

#include "absdeploy/errors.hpp"
#include "absdeploy/geometry.hpp"

namespace absdeploy {

// How the exponential attraction term treats the AOI radius.
enum class AttractionForm {
    printed,  // exp(-kappa_a * d - r)
    shifted,  // exp(-kappa_a * (d - r))
};

// Placement loss weights and optimizer settings. Defaults are the reference
// values used for the five-AOI, ten-ABS experiments.
struct PlacementHyper {
    double alpha = 0.01;  // coverage
    double beta = 1.0;    // attraction
    double gamma = 0.8;   // repulsion
    double eta = 1.0;     // collision
    double kappa_a = 0.02;
    double kappa_b = 0.5;
    double kappa_i = 0.25;
    double d_min = 400.0;
    double c_b = 15.0;
    // Buildings lower than h - rooftop_tolerance are ignored by the collision term.
    double rooftop_tolerance = 15.0;
    GridSpec grid{5, 5, 150.0};
    AttractionForm attraction = AttractionForm::printed;

    double learning_rate = 2.0;
    int max_iterations = 2500;
    int patience = 20;
    friend bool operator==(const PlacementHyper&, const PlacementHyper&) = default;
};

double coverage_factor(std::span<const Vec2> positions, std::span<const Vec2> grid_points);
double repulsion_penalty(std::span<const Vec2> positions, double d_min);

/// 1 / (1 + exp(-kappa (z - t))), stable for large |kappa (z - t)|.
double smooth_sigmoid(double z, double t, double kappa);

double aoi_weight(std::span<const Vec2> positions, const Aoi& aoi, double kappa_i);
double attraction_penalty(std::span<const Vec2> positions, std::span<const Aoi> aois, double kappa_a,
                          double kappa_i, AttractionForm form = AttractionForm::printed);
double collision_penalty(std::span<const Vec2> positions, std::span<const Building> blocking, double kappa_b,
                         double c_b);

/// Gradient of collision_penalty for every position (accumulated into `grad`).
void collision_penalty_gradient(std::span<const Vec2> positions, std::span<const Building> blocking,
                                double kappa_b, double c_b, std::span<Vec2> grad, double scale = 1.0);

struct PlacementTerms {
    double coverage = 0.0;    // K
    double attraction = 0.0;  // P_a
    double repulsion = 0.0;   // P_u
    double collision = 0.0;   // P_b
    double total = 0.0;
};

// Precomputed loss context: reference grid and blocking buildings are derived
// once from the scene.
class PlacementObjective {
public:
    PlacementObjective(const Scene& scene, std::vector<Aoi> aois, const PlacementHyper& hyper);

    PlacementTerms terms(std::span<const Vec2> positions) const;
    double loss(std::span<const Vec2> positions) const { return terms(positions).total; }
    std::vector<Vec2> gradient(std::span<const Vec2> positions) const;

    const std::vector<Vec2>& grid_points() const { return grid_; }
    const std::vector<Building>& blocking() const { return blocking_; }
    const std::vector<Aoi>& aois() const { return aois_; }
    const PlacementHyper& hyper() const { return hyper_; }

private:
    std::vector<Aoi> aois_;
    PlacementHyper hyper_;
    std::vector<Vec2> grid_;
    std::vector<Building> blocking_;
};

double placement_loss(std::span<const Vec2> positions, const Scene& scene, std::span<const Aoi> aois,
                      const PlacementHyper& hyper);
std::vector<Vec2> placement_gradient(std::span<const Vec2> positions, const Scene& scene,
                                     std::span<const Aoi> aois, const PlacementHyper& hyper);

enum class StopReason { max_iterations, early_stop, diverged, converged };
std::string to_string(StopReason r);

struct PlacementTrace {
    std::vector<std::vector<Vec2>> positions;  // one entry per evaluated iterate
    std::vector<double> loss;
    std::size_t best_index = 0;
    double best_loss = 0.0;
    StopReason reason = StopReason::max_iterations;
};

struct PlacementResult {
    std::vector<Vec2> positions;  // best iterate
    PlacementTrace trace;
};

class PlacementDivergedError : public NumericalError {
public:
    PlacementDivergedError(const std::string& what, PlacementTrace trace)
        : NumericalError(what), trace_(std::move(trace)) {}
    const PlacementTrace& trace() const { return trace_; }

private:
    PlacementTrace trace_;
};

/// Adam on the placement loss. Every evaluated iterate is recorded as a
/// waypoint; stops after `max_iterations` or when the best loss has not
/// improved for `patience` iterations. `seed` is accepted for interface
/// symmetry: the loop itself draws no random numbers.
PlacementResult optimize_placement(const Scene& scene, std::span<const Aoi> aois,
                                   std::span<const Vec2> init_positions, const PlacementHyper& hyper,
                                   std::uint64_t seed = 0);

/// Fraction of AOIs with at least one ABS within 2/3 of their radius.
double aoi_satisfaction(std::span<const Vec2> positions, std::span<const Aoi> aois);

}  // namespace absdeploy
