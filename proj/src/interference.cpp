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

#include "absdeploy/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "absdeploy/errors.hpp"

namespace absdeploy {

SirMap sir_map(const CoverageMap& coverage, std::span<const double> p_tx_watts, double eps) {
    const int n = coverage.num_tx;
    if (n < 1) throw InvalidArgumentError("SIR map needs at least one ABS");
    if (!(eps > 0.0)) throw InvalidArgumentError("SIR epsilon must be positive");
    const auto received = rss(coverage, p_tx_watts);
    const std::size_t cells = coverage.grid.cells();
    SirMap out;
    out.grid = coverage.grid;
    out.num_tx = n;
    out.linear.resize(received.size());
    out.db.resize(received.size());
    for (std::size_t c = 0; c < cells; ++c) {
        for (int i = 0; i < n; ++i) {
            double interference = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) interference += received[static_cast<std::size_t>(j) * cells + c];
            const std::size_t k = static_cast<std::size_t>(i) * cells + c;
            out.linear[k] = received[k] / (interference + eps);
            out.db[k] = 10.0 * std::log10(out.linear[k]);
        }
    }
    return out;
}

CoverageMask coverage_mask(const CoverageMap& coverage, double threshold) {
    if (threshold < 0.0) throw InvalidArgumentError("mask threshold must be non-negative");
    CoverageMask m;
    m.grid = coverage.grid;
    m.num_tx = coverage.num_tx;
    m.on.resize(coverage.gains.size());
    std::transform(coverage.gains.begin(), coverage.gains.end(), m.on.begin(),
                   [&](double g) { return static_cast<std::uint8_t>(g > threshold ? 1 : 0); });
    return m;
}

double masked_mean_db(std::span<const double> db, std::span<const std::uint8_t> mask, int tx) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < db.size(); ++k) {
        if (!mask[k]) continue;
        sum += db[k];
        ++count;
    }
    if (count == 0) throw NoCoverageError(tx, "ABS " + std::to_string(tx) + " has no covered cell");
    return sum / static_cast<double>(count);
}

std::vector<double> effective_sir(const SirMap& sir, const CoverageMask& mask) {
    if (sir.num_tx != mask.num_tx || sir.grid.cells() != mask.grid.cells())
        throw InvalidArgumentError("SIR map and mask dimensions differ");
    std::vector<double> r(static_cast<std::size_t>(sir.num_tx));
    for (int i = 0; i < sir.num_tx; ++i) r[static_cast<std::size_t>(i)] = masked_mean_db(sir.tx_db(i), mask.tx_mask(i), i);
    return r;
}

namespace {

void require_nonempty(std::span<const double> v, double beta) {
    if (v.empty()) throw InvalidArgumentError("smooth extremum of an empty vector");
    if (!(beta > 0.0)) throw InvalidArgumentError("temperature beta must be positive");
}

}  // namespace

double nlse(std::span<const double> values, double beta) {
    require_nonempty(values, beta);
    const double lo = *std::min_element(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += std::exp(-beta * (v - lo));
    return lo - std::log(s) / beta;
}

double lse(std::span<const double> values, double beta) {
    require_nonempty(values, beta);
    const double hi = *std::max_element(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += std::exp(beta * (v - hi));
    return hi + std::log(s) / beta;
}

std::vector<double> lse_weights(std::span<const double> values, double beta) {
    require_nonempty(values, beta);
    const double hi = *std::max_element(values.begin(), values.end());
    std::vector<double> w(values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += (w[i] = std::exp(beta * (values[i] - hi)));
    for (auto& x : w) x /= s;
    return w;
}

std::vector<double> nlse_weights(std::span<const double> values, double beta) {
    require_nonempty(values, beta);
    const double lo = *std::min_element(values.begin(), values.end());
    std::vector<double> w(values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += (w[i] = std::exp(-beta * (values[i] - lo)));
    for (auto& x : w) x /= s;
    return w;
}

double loss_maxmin(std::span<const double> effective_sirs, double beta, double xi) {
    const double mean =
        std::accumulate(effective_sirs.begin(), effective_sirs.end(), 0.0) / static_cast<double>(effective_sirs.size());
    return -nlse(effective_sirs, beta) + xi * (-mean);
}

AoiWindow aoi_window(const CoverageGrid& grid, const Aoi& aoi) {
    const double fx = (aoi.center.x - grid.origin.x) / grid.cell_size;
    const double fy = (aoi.center.y - grid.origin.y) / grid.cell_size;
    if (!(fx >= 0.0 && fx < grid.nx && fy >= 0.0 && fy < grid.ny))
        throw InvalidArgumentError("AOI center lies outside the coverage grid");
    AoiWindow w;
    w.center_x = static_cast<int>(std::floor(fx));
    w.center_y = static_cast<int>(std::floor(fy));
    w.half_width = std::max(1, static_cast<int>(std::lround(aoi.radius / grid.cell_size)));
    const int x0 = w.center_x - w.half_width, x1 = w.center_x + w.half_width;
    const int y0 = w.center_y - w.half_width, y1 = w.center_y + w.half_width;
    w.x_begin = std::max(0, x0);
    w.x_end = std::min(grid.nx, x1);
    w.y_begin = std::max(0, y0);
    w.y_end = std::min(grid.ny, y1);
    w.clipped = w.x_begin != x0 || w.x_end != x1 || w.y_begin != y0 || w.y_end != y1;
    return w;
}

std::vector<double> extract_aoi_window(const SirMap& sir, const AoiWindow& window) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(sir.num_tx * window.width() * window.height()));
    const auto ny = static_cast<std::size_t>(sir.grid.ny);
    for (int i = 0; i < sir.num_tx; ++i) {
        const auto base = static_cast<std::size_t>(i) * sir.grid.cells();
        for (int ix = window.x_begin; ix < window.x_end; ++ix)
            for (int iy = window.y_begin; iy < window.y_end; ++iy)
                out.push_back(sir.linear[base + static_cast<std::size_t>(ix) * ny + static_cast<std::size_t>(iy)]);
    }
    return out;
}

std::vector<double> window_effective_sir(const SirMap& sir, const CoverageMask& mask, const AoiWindow& window) {
    std::vector<double> r(static_cast<std::size_t>(sir.num_tx));
    const auto ny = static_cast<std::size_t>(sir.grid.ny);
    for (int i = 0; i < sir.num_tx; ++i) {
        const auto base = static_cast<std::size_t>(i) * sir.grid.cells();
        double sum = 0.0;
        std::size_t count = 0;
        for (int ix = window.x_begin; ix < window.x_end; ++ix) {
            for (int iy = window.y_begin; iy < window.y_end; ++iy) {
                const auto k = base + static_cast<std::size_t>(ix) * ny + static_cast<std::size_t>(iy);
                if (!mask.on[k]) continue;
                sum += sir.db[k];
                ++count;
            }
        }
        if (count == 0)
            throw NoCoverageError(i, "ABS " + std::to_string(i) + " has no covered cell inside the AOI window");
        r[static_cast<std::size_t>(i)] = sum / static_cast<double>(count);
    }
    return r;
}

std::vector<double> softmin_weights(std::span<const double> x, double temperature) {
    if (x.empty()) throw InvalidArgumentError("softmin of an empty vector");
    if (!(temperature > 0.0)) throw InvalidArgumentError("softmin temperature must be positive");
    return nlse_weights(x, 1.0 / temperature);
}

AoiLoss loss_weighted_aoi(const SirMap& sir, const CoverageMask& mask, std::span<const AoiWindow> windows,
                          double beta, double temperature) {
    if (windows.empty()) throw InvalidArgumentError("weighted AOI loss needs at least one AOI");
    AoiLoss out;
    for (const auto& w : windows) {
        out.window_sirs.push_back(window_effective_sir(sir, mask, w));
        out.smooth_max.push_back(lse(out.window_sirs.back(), beta));
    }
    out.weights = softmin_weights(out.smooth_max, temperature);
    for (std::size_t m = 0; m < windows.size(); ++m) {
        out.weighted -= out.weights[m] * out.smooth_max[m];
        out.unweighted -= out.smooth_max[m];
    }
    return out;
}

double jain_fairness(std::span<const double> values_db) {
    if (values_db.empty()) throw InvalidArgumentError("Jain's fairness of an empty vector");
    double s = 0.0, s2 = 0.0;
    for (double db : values_db) {
        const double x = std::pow(10.0, db / 10.0);
        s += x;
        s2 += x * x;
    }
    return s * s / (static_cast<double>(values_db.size()) * s2);
}

}  // namespace absdeploy
