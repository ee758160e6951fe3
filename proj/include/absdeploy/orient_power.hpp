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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "absdeploy/errors.hpp"
#include "absdeploy/geometry.hpp"
#include "absdeploy/interference.hpp"
#include "absdeploy/optim.hpp"
#include "absdeploy/propagation.hpp"
#include "absdeploy/random.hpp"

namespace absdeploy {

struct AbsOrientation {
    double azimuth = 0.0;                  // rad
    double tilt = std::numbers::pi / 2.0;  // rad, pi/2 faces the ground
    double power_dbm = 43.0;
    friend bool operator==(const AbsOrientation&, const AbsOrientation&) = default;
};

using OrientPowerParams = std::vector<AbsOrientation>;

struct ParamBounds {
    double azimuth_min = -2.0 * std::numbers::pi;
    double azimuth_max = 2.0 * std::numbers::pi;
    double tilt_min = std::numbers::pi / 7.0;
    double tilt_max = 6.0 * std::numbers::pi / 7.0;
    double power_min_dbm = 13.0;
    double power_max_dbm = 43.0;
};

/// Componentwise projection into the bounds; idempotent.
OrientPowerParams clamp_params(std::span<const AbsOrientation> params, const ParamBounds& bounds = {});

/// Uniform draw of every parameter inside the bounds.
OrientPowerParams random_params(std::size_t n, const ParamBounds& bounds, Rng& rng);

enum class OrientMethod {
    max_min,       // -NLSE(r) + xi * (-mean r)
    weighted_aoi,  // -sum_m w_m LSE(r*_m)
    average_sir,   // -mean r, the naive baseline
};

std::string to_string(OrientMethod m);
OrientMethod orient_method_from_string(const std::string& s);

struct SirLossConfig {
    double beta_l = 1.0;
    double xi = 0.25;
    double temperature = 25.0;
    double epsilon = 1e-20;
    // Negative selects default_mask_threshold().
    double mask_threshold = -1.0;
    friend bool operator==(const SirLossConfig&, const SirLossConfig&) = default;
};

// Everything that stays fixed while orientations and powers are optimized.
// Coverage maps are always evaluated with the smooth pattern so that values
// and gradients describe the same function.
class OrientPowerProblem {
public:
    OrientPowerProblem(Scene scene, std::vector<Vec2> positions, std::vector<Aoi> aois, OrientMethod method,
                       CoverageGrid grid, PropagationModel model = {}, SirLossConfig loss = {},
                       AntennaConfig antenna = {});

    struct Evaluation {
        double loss = 0.0;
        std::vector<double> effective_sir;  // per ABS over the whole map (max_min, average_sir)
        AoiLoss aoi;                        // weighted_aoi only
        // d loss / d (x, y, azimuth, tilt, power_dbm) per ABS.
        std::vector<std::array<double, 5>> gradient;
    };

    Evaluation evaluate(std::span<const AbsOrientation> params, bool with_gradient) const {
        return evaluate(positions_, params, with_gradient);
    }
    Evaluation evaluate(std::span<const Vec2> positions, std::span<const AbsOrientation> params,
                        bool with_gradient) const;

    /// Effective SIR of every ABS over the whole map.
    std::vector<double> map_effective_sir(std::span<const AbsOrientation> params) const;
    /// Window effective SIR of the serving (best) ABS of every AOI.
    std::vector<double> serving_sir(std::span<const AbsOrientation> params) const;

    std::vector<TxConfig> tx_configs(std::span<const Vec2> positions, std::span<const AbsOrientation> params) const;

    const Scene& scene() const { return scene_; }
    const std::vector<Vec2>& positions() const { return positions_; }
    const std::vector<Aoi>& aois() const { return aois_; }
    const std::vector<AoiWindow>& windows() const { return windows_; }
    OrientMethod method() const { return method_; }
    const CoverageGrid& grid() const { return grid_; }
    const PropagationModel& model() const { return model_; }
    const SirLossConfig& loss_config() const { return loss_; }
    double mask_threshold() const { return mask_threshold_; }

private:
    Scene scene_;
    std::vector<Vec2> positions_;
    std::vector<Aoi> aois_;
    std::vector<AoiWindow> windows_;
    OrientMethod method_;
    CoverageGrid grid_;
    PropagationModel model_;
    SirLossConfig loss_;
    AntennaConfig antenna_;
    double mask_threshold_;
};

enum class OptimizerKind { rmsprop, adam };

struct OptimizerSchedule {
    OptimizerKind algorithm = OptimizerKind::rmsprop;
    double learning_rate = 0.1;
    double decay = 0.5;
    int patience = 5;
    int max_epochs = 150;
    double lr_floor = 1e-4;
};

struct EpochRecord {
    int epoch = 0;
    double loss = 0.0;
    double best_loss = 0.0;
    double learning_rate = 0.0;
    OrientPowerParams params;
};

struct OrientResult {
    OrientPowerParams params;  // best-loss parameters
    double best_loss = 0.0;
    std::vector<EpochRecord> trace;
    std::string stop_reason;
};

class OrientDivergedError : public NumericalError {
public:
    OrientDivergedError(const std::string& what, std::vector<EpochRecord> trace)
        : NumericalError(what), trace_(std::move(trace)) {}
    const std::vector<EpochRecord>& trace() const { return trace_; }

private:
    std::vector<EpochRecord> trace_;
};

/// Gradient descent over (azimuth, tilt, power) of every ABS with projection
/// after each step and learning-rate decay on plateaus. Returns the best-loss
/// parameters. `seed` is reserved for stochastic coverage providers; the
/// built-in model is deterministic.
OrientResult optimize_orient_power(const OrientPowerProblem& problem, std::span<const AbsOrientation> init,
                                   const OptimizerSchedule& schedule = {}, const ParamBounds& bounds = {},
                                   std::uint64_t seed = 0);

}  // namespace absdeploy
