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
#include <vector>

#include "absdeploy/geometry.hpp"
#include "absdeploy/propagation.hpp"

namespace absdeploy {

// Per-ABS signal-to-interference ratio grids, same layout as CoverageMap.
struct SirMap {
    CoverageGrid grid;
    int num_tx = 0;
    std::vector<double> linear;
    std::vector<double> db;

    std::span<const double> tx_db(int tx) const {
        return std::span<const double>(db).subspan(static_cast<std::size_t>(tx) * grid.cells(), grid.cells());
    }
};

/// R_i = P_i C_i / (sum_{j != i} P_j C_j + eps), per cell.
SirMap sir_map(const CoverageMap& coverage, std::span<const double> p_tx_watts, double eps = 1e-20);

// Binary per-ABS coverage indicator, same layout as CoverageMap.
struct CoverageMask {
    CoverageGrid grid;
    int num_tx = 0;
    std::vector<std::uint8_t> on;

    std::span<const std::uint8_t> tx_mask(int tx) const {
        return std::span<const std::uint8_t>(on).subspan(static_cast<std::size_t>(tx) * grid.cells(), grid.cells());
    }
};

/// 1 where gain > threshold.
CoverageMask coverage_mask(const CoverageMap& coverage, double threshold = 0.0);

/// Masked mean of a dB grid. Throws NoCoverageError (with index `tx`) when
/// the mask is empty.
double masked_mean_db(std::span<const double> db, std::span<const std::uint8_t> mask, int tx = 0);

/// Effective SIR of every ABS over the whole map.
std::vector<double> effective_sir(const SirMap& sir, const CoverageMask& mask);

/// Smooth minimum -(1/beta) log sum exp(-beta r), stabilized.
double nlse(std::span<const double> values, double beta);
/// Smooth maximum (1/beta) log sum exp(beta r), stabilized.
double lse(std::span<const double> values, double beta);

/// Softmax of -beta r; the gradient of nlse w.r.t. r.
std::vector<double> nlse_weights(std::span<const double> values, double beta);
/// Softmax of beta r; the gradient of lse w.r.t. r.
std::vector<double> lse_weights(std::span<const double> values, double beta);

/// -NLSE(r, beta) + xi * (-mean(r)).
double loss_maxmin(std::span<const double> effective_sirs, double beta, double xi);

// Square window of cells around an AOI; ranges are half-open and already
// clipped to the grid.
struct AoiWindow {
    int center_x = 0;
    int center_y = 0;
    int half_width = 1;
    int x_begin = 0, x_end = 0;
    int y_begin = 0, y_end = 0;
    bool clipped = false;

    int width() const { return x_end - x_begin; }
    int height() const { return y_end - y_begin; }
};

AoiWindow aoi_window(const CoverageGrid& grid, const Aoi& aoi);

/// Window contents for every ABS, row-major [tx][ix][iy] over the window.
std::vector<double> extract_aoi_window(const SirMap& sir, const AoiWindow& window);

/// Effective SIR of every ABS restricted to the window cells.
std::vector<double> window_effective_sir(const SirMap& sir, const CoverageMask& mask, const AoiWindow& window);

/// exp(-x_m / T) / sum exp(-x_j / T).
std::vector<double> softmin_weights(std::span<const double> x, double temperature);

struct AoiLoss {
    double weighted = 0.0;    // -sum w_m LSE_m
    double unweighted = 0.0;  // -sum LSE_m
    std::vector<double> smooth_max;                 // LSE_m per AOI
    std::vector<double> weights;                    // softmin weights
    std::vector<std::vector<double>> window_sirs;   // r*_m per AOI
};

AoiLoss loss_weighted_aoi(const SirMap& sir, const CoverageMask& mask, std::span<const AoiWindow> windows,
                          double beta, double temperature);

/// Jain's index over dB values converted to linear power.
double jain_fairness(std::span<const double> values_db);

}  // namespace absdeploy
