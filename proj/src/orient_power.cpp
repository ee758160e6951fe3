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

#include "absdeploy/orient_power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace absdeploy {

OrientPowerParams clamp_params(std::span<const AbsOrientation> params, const ParamBounds& b) {
    OrientPowerParams out(params.begin(), params.end());
    for (auto& p : out) {
        p.azimuth = std::clamp(p.azimuth, b.azimuth_min, b.azimuth_max);
        p.tilt = std::clamp(p.tilt, b.tilt_min, b.tilt_max);
        p.power_dbm = std::clamp(p.power_dbm, b.power_min_dbm, b.power_max_dbm);
    }
    return out;
}

OrientPowerParams random_params(std::size_t n, const ParamBounds& b, Rng& rng) {
    OrientPowerParams out(n);
    for (auto& p : out) {
        p.azimuth = rng.uniform(b.azimuth_min, b.azimuth_max);
        p.tilt = rng.uniform(b.tilt_min, b.tilt_max);
        p.power_dbm = rng.uniform(b.power_min_dbm, b.power_max_dbm);
    }
    return out;
}

std::string to_string(OrientMethod m) {
    switch (m) {
        case OrientMethod::max_min: return "maxmin";
        case OrientMethod::weighted_aoi: return "aoi";
        case OrientMethod::average_sir: return "avgsir";
    }
    return "unknown";
}

OrientMethod orient_method_from_string(const std::string& s) {
    if (s == "maxmin") return OrientMethod::max_min;
    if (s == "aoi") return OrientMethod::weighted_aoi;
    if (s == "avgsir") return OrientMethod::average_sir;
    throw InvalidArgumentError("unknown orientation method '" + s + "' (expected maxmin, aoi or avgsir)");
}

OrientPowerProblem::OrientPowerProblem(Scene scene, std::vector<Vec2> positions, std::vector<Aoi> aois,
                                       OrientMethod method, CoverageGrid grid, PropagationModel model,
                                       SirLossConfig loss, AntennaConfig antenna)
    : scene_(std::move(scene)), positions_(std::move(positions)), aois_(std::move(aois)), method_(method),
      grid_(grid), model_(model), loss_(loss), antenna_(antenna) {
    if (positions_.empty()) throw InvalidArgumentError("orientation problem needs at least one ABS");
    model_.smooth_pattern = true;
    mask_threshold_ = loss_.mask_threshold >= 0.0 ? loss_.mask_threshold : default_mask_threshold(scene_, model_);
    if (method_ == OrientMethod::weighted_aoi) {
        if (aois_.empty()) throw InvalidArgumentError("weighted AOI method needs at least one AOI");
        for (const auto& a : aois_) windows_.push_back(aoi_window(grid_, a));
    }
}

std::vector<TxConfig> OrientPowerProblem::tx_configs(std::span<const Vec2> positions,
                                                     std::span<const AbsOrientation> params) const {
    if (positions.size() != params.size()) throw InvalidArgumentError("one orientation per ABS position required");
    std::vector<TxConfig> txs(positions.size());
    for (std::size_t i = 0; i < txs.size(); ++i) {
        txs[i].position = {positions[i].x, positions[i].y, scene_.hover_elevation()};
        txs[i].antenna = antenna_;
        txs[i].antenna.azimuth = params[i].azimuth;
        txs[i].antenna.tilt = params[i].tilt;
        txs[i].power_dbm = params[i].power_dbm;
    }
    return txs;
}

OrientPowerProblem::Evaluation OrientPowerProblem::evaluate(std::span<const Vec2> positions,
                                                            std::span<const AbsOrientation> params,
                                                            bool with_gradient) const {
    const auto txs = tx_configs(positions, params);
    const int n = static_cast<int>(txs.size());
    GainJacobian jac;
    const CoverageMap map =
        with_gradient ? compute_coverage_map(scene_, txs, grid_, model_, jac) : compute_coverage_map(scene_, txs, grid_, model_);
    std::vector<double> watts(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i) watts[i] = txs[i].power_watts();

    const SirMap sir = sir_map(map, watts, loss_.epsilon);
    const CoverageMask mask = coverage_mask(map, mask_threshold_);
    const std::size_t cells = grid_.cells();

    Evaluation ev;
    // Adjoint dL/dR^dB per (ABS, cell).
    std::vector<double> adj;
    if (with_gradient) adj.assign(map.gains.size(), 0.0);

    auto spread_over_mask = [&](int i, double dl_dr, const AoiWindow* w) {
        const auto base = static_cast<std::size_t>(i) * cells;
        const auto ny = static_cast<std::size_t>(grid_.ny);
        std::size_t count = 0;
        auto visit = [&](auto&& fn) {
            if (w == nullptr) {
                for (std::size_t c = 0; c < cells; ++c) fn(base + c);
            } else {
                for (int ix = w->x_begin; ix < w->x_end; ++ix)
                    for (int iy = w->y_begin; iy < w->y_end; ++iy)
                        fn(base + static_cast<std::size_t>(ix) * ny + static_cast<std::size_t>(iy));
            }
        };
        visit([&](std::size_t k) { count += mask.on[k]; });
        const double share = dl_dr / static_cast<double>(count);
        visit([&](std::size_t k) {
            if (mask.on[k]) adj[k] += share;
        });
    };

    if (method_ == OrientMethod::weighted_aoi) {
        ev.aoi = loss_weighted_aoi(sir, mask, windows_, loss_.beta_l, loss_.temperature);
        ev.loss = ev.aoi.weighted;
        if (with_gradient) {
            const auto& x = ev.aoi.smooth_max;
            const auto& w = ev.aoi.weights;
            double wx = 0.0;
            for (std::size_t m = 0; m < x.size(); ++m) wx += w[m] * x[m];
            for (std::size_t m = 0; m < windows_.size(); ++m) {
                // L = -sum w_m x_m with w = softmin(x / T).
                const double dl_dx = -w[m] + w[m] / loss_.temperature * (x[m] - wx);
                const auto lw = lse_weights(ev.aoi.window_sirs[m], loss_.beta_l);
                for (int i = 0; i < n; ++i) spread_over_mask(i, dl_dx * lw[static_cast<std::size_t>(i)], &windows_[m]);
            }
        }
    } else {
        ev.effective_sir = effective_sir(sir, mask);
        const auto& r = ev.effective_sir;
        const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
        if (method_ == OrientMethod::max_min) {
            ev.loss = -nlse(r, loss_.beta_l) - loss_.xi * mean;
        } else {
            ev.loss = -mean;
        }
        if (with_gradient) {
            const auto wmin = nlse_weights(r, loss_.beta_l);
            for (int i = 0; i < n; ++i) {
                const double dl_dr = method_ == OrientMethod::max_min
                                         ? -wmin[static_cast<std::size_t>(i)] - loss_.xi / n
                                         : -1.0 / n;
                spread_over_mask(i, dl_dr, nullptr);
            }
        }
    }
    if (!with_gradient) return ev;

    // Back through R^dB_i = K (ln s_i - ln(I_i + eps)), s_i = P_i g_i.
    constexpr double kDb = 10.0 / std::numbers::ln10;
    ev.gradient.assign(txs.size(), {0.0, 0.0, 0.0, 0.0, 0.0});
    std::vector<double> s(txs.size()), interf(txs.size()), dl_dp(txs.size(), 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        bool any = false;
        for (int i = 0; i < n; ++i) any = any || adj[static_cast<std::size_t>(i) * cells + c] != 0.0;
        if (!any) continue;
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = watts[static_cast<std::size_t>(i)] * map.gains[static_cast<std::size_t>(i) * cells + c];
        double b = 0.0;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) acc += s[static_cast<std::size_t>(j)];
            interf[static_cast<std::size_t>(i)] = acc + loss_.epsilon;
            b += adj[static_cast<std::size_t>(i) * cells + c] / interf[static_cast<std::size_t>(i)];
        }
        for (int k = 0; k < n; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const auto idx = uk * cells + c;
            const double a = adj[idx];
            double dl_ds = -b + a / interf[uk];
            if (a != 0.0) dl_ds += a / s[uk];
            dl_ds *= kDb;
            if (dl_ds == 0.0) continue;
            const double dl_dg = dl_ds * watts[uk];
            for (int q = 0; q < 4; ++q) ev.gradient[uk][static_cast<std::size_t>(q)] += dl_dg * jac[idx][static_cast<std::size_t>(q)];
            dl_dp[uk] += dl_ds * map.gains[idx];
        }
    }
    for (std::size_t i = 0; i < txs.size(); ++i) ev.gradient[i][4] = dl_dp[i] * watts[i] * std::numbers::ln10 / 10.0;
    return ev;
}

std::vector<double> OrientPowerProblem::map_effective_sir(std::span<const AbsOrientation> params) const {
    const auto txs = tx_configs(positions_, params);
    const auto map = compute_coverage_map(scene_, txs, grid_, model_);
    std::vector<double> watts(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i) watts[i] = txs[i].power_watts();
    return effective_sir(sir_map(map, watts, loss_.epsilon), coverage_mask(map, mask_threshold_));
}

std::vector<double> OrientPowerProblem::serving_sir(std::span<const AbsOrientation> params) const {
    const auto txs = tx_configs(positions_, params);
    const auto map = compute_coverage_map(scene_, txs, grid_, model_);
    std::vector<double> watts(txs.size());
    for (std::size_t i = 0; i < txs.size(); ++i) watts[i] = txs[i].power_watts();
    const auto sir = sir_map(map, watts, loss_.epsilon);
    const auto mask = coverage_mask(map, mask_threshold_);
    std::vector<double> out;
    for (const auto& a : aois_) {
        const auto r = window_effective_sir(sir, mask, aoi_window(grid_, a));
        out.push_back(*std::max_element(r.begin(), r.end()));
    }
    return out;
}

OrientResult optimize_orient_power(const OrientPowerProblem& problem, std::span<const AbsOrientation> init,
                                   const OptimizerSchedule& schedule, const ParamBounds& bounds,
                                   std::uint64_t /*seed*/) {
    if (!(schedule.decay > 0.0 && schedule.decay <= 1.0)) throw InvalidArgumentError("decay must be in (0, 1]");
    if (schedule.patience < 1) throw InvalidArgumentError("patience must be at least 1");
    if (init.size() != problem.positions().size()) throw InvalidArgumentError("one initial orientation per ABS required");

    OrientResult result;
    result.params = clamp_params(init, bounds);
    result.best_loss = std::numeric_limits<double>::infinity();
    result.stop_reason = "max_epochs";

    OrientPowerParams current = result.params;
    const std::size_t n = current.size();
    std::vector<double> flat(3 * n), grad(3 * n);
    RmsPropState rms;
    std::optional<Adam> adam;
    if (schedule.algorithm == OptimizerKind::adam) adam.emplace(3 * n);

    double lr = schedule.learning_rate;
    int since_best = 0;
    for (int epoch = 0; epoch < schedule.max_epochs; ++epoch) {
        const auto ev = problem.evaluate(current, true);
        result.trace.push_back({epoch, ev.loss, std::min(result.best_loss, ev.loss), lr, current});
        if (!std::isfinite(ev.loss))
            throw OrientDivergedError("orientation loss became non-finite at epoch " + std::to_string(epoch),
                                      std::move(result.trace));
        if (ev.loss < result.best_loss) {
            result.best_loss = ev.loss;
            result.params = current;
            since_best = 0;
        } else if (++since_best >= schedule.patience) {
            lr *= schedule.decay;
            since_best = 0;
            if (lr < schedule.lr_floor) {
                result.stop_reason = "lr_floor";
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            flat[3 * i] = current[i].azimuth;
            flat[3 * i + 1] = current[i].tilt;
            flat[3 * i + 2] = current[i].power_dbm;
            grad[3 * i] = ev.gradient[i][2];
            grad[3 * i + 1] = ev.gradient[i][3];
            grad[3 * i + 2] = ev.gradient[i][4];
        }
        if (adam)
            adam->step(flat, grad, lr);
        else
            rmsprop_step(flat, grad, rms, lr);
        for (std::size_t i = 0; i < n; ++i) current[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
        current = clamp_params(current, bounds);
    }
    return result;
}

}  // namespace absdeploy
