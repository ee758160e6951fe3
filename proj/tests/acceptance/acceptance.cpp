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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absdeploy/errors.hpp"
#include "absdeploy/interference.hpp"
#include "absdeploy/interop.hpp"
#include "absdeploy/optim.hpp"
#include "absdeploy/orient_power.hpp"
#include "absdeploy/placement.hpp"
#include "absdeploy/propagation.hpp"
#include "absdeploy/random.hpp"
#include "absdeploy/resilience.hpp"
#include "absdeploy/units.hpp"
#include "oracles.hpp"
#include "random_docs.hpp"

using namespace absdeploy;
namespace fs = std::filesystem;

namespace {

// Criterion thresholds.
constexpr double kMinMeanSatisfaction = 0.95;
constexpr int kSatisfactionSeeds = 50;
constexpr int kGradientPoints = 100;
constexpr double kPlacementGradTol = 1e-4;
constexpr double kCoupledGradTol = 1e-3;
constexpr int kExtremaVectors = 1000;
constexpr double kSoftminTol = 1e-9;
constexpr double kRandomBaselineMarginDb = 5.0;
constexpr int kRandomDraws = 50;
constexpr double kOracleTol = 1e-9;
constexpr double kRecoveryGainDb = 20.0;
constexpr int kRoundTrips = 1000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

const std::vector<Aoi> kFiveAois{{{450, 168}, 300}, {{-247, 145}, 250}, {{-423, -416}, 250},
                               {{353, -622}, 250}, {{-852, 133}, 250}};

// 2 km square with 30 random boxes, all tall enough to block.
Scene random_city(std::uint64_t seed) {
    Rng rng(1000 + seed);
    std::vector<Building> bs;
    while (bs.size() < 30) {
        const double w = rng.uniform(30, 120), d = rng.uniform(30, 120);
        const double x = rng.uniform(-1000, 1000 - w), y = rng.uniform(-1000, 1000 - d);
        bs.push_back({{x, y}, {x + w, y + d}, rng.uniform(60, 200)});
    }
    return Scene({-1000, -1000}, {1000, 1000}, bs, 70);
}

Outcome placement_satisfaction() {
    double total = 0;
    std::size_t min_blocking = 1000;
    for (int s = 0; s < kSatisfactionSeeds; ++s) {
        const Scene scene = random_city(static_cast<std::uint64_t>(s));
        min_blocking = std::min(min_blocking, blocking_buildings(scene, 15.0).size());
        const auto init = semi_random_init(scene, 10, static_cast<std::uint64_t>(s), 50.0);
        const auto r = optimize_placement(scene, kFiveAois, init, {}, static_cast<std::uint64_t>(s));
        total += aoi_satisfaction(r.positions, kFiveAois);
    }
    const double m = total / kSatisfactionSeeds;
    return {m >= kMinMeanSatisfaction && min_blocking >= 25,
            "mean S_AOI " + fmt("%.3f", m) + " over 50 seeds, " + std::to_string(min_blocking) +
                "+ blocking buildings (need >= 0.95)"};
}

double vec_rel(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0, den = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

Outcome gradient_correctness() {
    // Placement loss on a random city.
    const Scene city = random_city(7);
    const auto blocking = blocking_buildings(city, 15.0);
    Rng rng(77);
    double worst_p = 0;
    for (int n = 0; n < kGradientPoints;) {
        std::vector<Vec2> p(6);
        for (auto& v : p) v = {rng.uniform(-990, 990), rng.uniform(-990, 990)};
        bool ok = true;
        for (auto v : p)
            for (const auto& b : blocking) ok = ok && distance_to_building(v, b) > 1.0;
        if (!ok) continue;
        const auto g = placement_gradient(p, city, kFiveAois, {});
        std::vector<double> ga, gf;
        const double h = 1e-3;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (int k = 0; k < 2; ++k) {
                auto a = p, b = p;
                (k ? a[i].y : a[i].x) += h;
                (k ? b[i].y : b[i].x) -= h;
                gf.push_back((placement_loss(a, city, kFiveAois, {}) - placement_loss(b, city, kFiveAois, {})) / (2 * h));
                ga.push_back(k ? g[i].y : g[i].x);
            }
        worst_p = std::max(worst_p, vec_rel(ga, gf));
        ++n;
    }

    // Orientation losses through the propagation model.
    const Scene s({-250, -250}, {250, 250}, {{{-40, 60}, {10, 120}, 90}, {{80, -150}, {140, -90}, 50}}, 70);
    const std::vector<Aoi> aois{{{-150, 100}, 60}, {{150, -20}, 50}};
    const auto grid = CoverageGrid::covering(s, 25);
    double worst_o = 0;
    for (auto method : {OrientMethod::max_min, OrientMethod::weighted_aoi}) {
        const OrientPowerProblem prob(s, {{0, 0}, {1, 1}, {2, 2}}, aois, method, grid);
        for (int n = 0; n < kGradientPoints;) {
            std::vector<Vec2> pos(3);
            for (auto& v : pos) v = {rng.uniform(-230, 230), rng.uniform(-230, 230)};
            bool ok = true;
            for (auto v : pos)
                for (const auto& b : s.buildings()) ok = ok && distance_to_building(v, b) > 1.0;
            if (!ok) continue;
            const auto params = random_params(3, {}, rng);
            const auto ev = prob.evaluate(pos, params, true);
            std::vector<double> ga, gf;
            for (std::size_t i = 0; i < 3; ++i)
                for (int k = 0; k < 5; ++k) {
                    const double h = k < 2 ? 1e-3 : (k < 4 ? 1e-5 : 1e-4);
                    auto pp = pos, pm = pos;
                    auto qp = params, qm = params;
                    if (k == 0) { pp[i].x += h; pm[i].x -= h; }
                    if (k == 1) { pp[i].y += h; pm[i].y -= h; }
                    if (k == 2) { qp[i].azimuth += h; qm[i].azimuth -= h; }
                    if (k == 3) { qp[i].tilt += h; qm[i].tilt -= h; }
                    if (k == 4) { qp[i].power_dbm += h; qm[i].power_dbm -= h; }
                    gf.push_back((prob.evaluate(pp, qp, false).loss - prob.evaluate(pm, qm, false).loss) / (2 * h));
                    ga.push_back(ev.gradient[i][static_cast<std::size_t>(k)]);
                }
            worst_o = std::max(worst_o, vec_rel(ga, gf));
            ++n;
        }
    }
    return {worst_p <= kPlacementGradTol && worst_o <= kCoupledGradTol,
            "worst relative error placement " + fmt("%.2e", worst_p) + " (<= 1e-4), orientation " + fmt("%.2e", worst_o) +
                " (<= 1e-3)"};
}

Outcome smooth_extrema() {
    Rng rng(3);
    int bad = 0;
    double worst_sum = 0, worst_shift = 0;
    for (int k = 0; k < kExtremaVectors; ++k) {
        std::vector<double> r(1 + rng.below(20));
        for (auto& x : r) x = rng.uniform(-60, 60);
        const double beta = rng.uniform(0.05, 5.0);
        const double mn = min_of(r), mx = *std::max_element(r.begin(), r.end());
        const double logm = std::log(static_cast<double>(r.size())) / beta;
        const double n = nlse(r, beta), l = lse(r, beta);
        if (!(mn - logm <= n + 1e-12 && n <= mn + 1e-12)) ++bad;
        if (!(mx - 1e-12 <= l && l <= mx + logm + 1e-12)) ++bad;
        const double temp = rng.uniform(0.5, 50);
        const auto w = softmin_weights(r, temp);
        worst_sum = std::max(worst_sum, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0));
        auto shifted = r;
        const double c = rng.uniform(-500, 500);
        for (auto& x : shifted) x += c;
        const auto ws = softmin_weights(shifted, temp);
        for (std::size_t i = 0; i < w.size(); ++i) worst_shift = std::max(worst_shift, std::abs(w[i] - ws[i]));
    }
    return {bad == 0 && worst_sum <= kSoftminTol && worst_shift <= kSoftminTol,
            std::to_string(bad) + " bound violations in 1000 vectors, softmin sum error " + fmt("%.1e", worst_sum) +
                ", shift error " + fmt("%.1e", worst_shift)};
}

Outcome maxmin_behavior() {
    const Scene s({-500, -500}, {500, 500}, {}, 70);
    const std::vector<Vec2> pos{{-150, 0}, {0, 0}, {150, 0}};
    const auto grid = CoverageGrid::covering(s, 10);
    const OrientPowerProblem maxmin(s, pos, {}, OrientMethod::max_min, grid);
    const OrientPowerProblem average(s, pos, {}, OrientMethod::average_sir, grid);
    const OrientPowerParams init(3);
    const auto before = maxmin.map_effective_sir(init);
    const auto rm = optimize_orient_power(maxmin, init);
    const auto after = maxmin.map_effective_sir(rm.params);
    OptimizerSchedule avg_sched;
    avg_sched.learning_rate = 0.05;
    const auto ra = optimize_orient_power(average, init, avg_sched);
    const auto avg_after = average.map_effective_sir(ra.params);
    const bool ok = min_of(after) > min_of(before) && jain_fairness(after) >= jain_fairness(before) &&
                    min_of(avg_after) < min_of(after);
    return {ok, "min SIR " + fmt("%.2f", min_of(before)) + " -> " + fmt("%.2f", min_of(after)) + " dB, Jain " +
                    fmt("%.4f", jain_fairness(before)) + " -> " + fmt("%.4f", jain_fairness(after)) +
                    ", average-SIR min " + fmt("%.2f", min_of(avg_after)) + " dB"};
}

Outcome weighted_aoi_behavior() {
    const Scene s({-500, -500}, {500, 500}, {{{-40, -200}, {40, -120}, 90}}, 70);
    const std::vector<Aoi> aois{{{-250, 0}, 150}, {{250, 50}, 150}};
    const std::vector<Vec2> pos{{-250, 30}, {250, 0}, {0, 250}, {0, -350}};
    const OrientPowerProblem prob(s, pos, aois, OrientMethod::weighted_aoi, CoverageGrid::covering(s, 10));
    const OrientPowerParams init(4);
    const double initial = mean(prob.serving_sir(init));
    OptimizerSchedule sched;
    sched.learning_rate = 0.05;
    const auto r = optimize_orient_power(prob, init, sched);
    const double optimized = mean(prob.serving_sir(r.params));
    Rng rng(99);
    double random_total = 0;
    for (int k = 0; k < kRandomDraws; ++k) random_total += mean(prob.serving_sir(random_params(4, {}, rng)));
    const double random_mean = random_total / kRandomDraws;
    const bool ok = optimized > initial && optimized - random_mean >= kRandomBaselineMarginDb;
    return {ok, "serving SIR " + fmt("%.2f", initial) + " -> " + fmt("%.2f", optimized) + " dB, random mean " +
                    fmt("%.2f", random_mean) + " dB, margin " + fmt("%.2f", optimized - random_mean) + " dB (need >= 5)"};
}

Outcome unit_oracles() {
    std::vector<std::string> failed;
    auto near = [&](const char* name, double got, double want, double tol = kOracleTol) {
        if (!(std::abs(got - want) <= tol)) failed.push_back(name);
    };
    auto expect = [&](const char* name, bool ok) {
        if (!ok) failed.push_back(name);
    };

    {
        const auto g = generate_grid(Scene({0, 0}, {100, 100}, {}, 70), {2, 2, 10});
        double sx = 0;
        for (auto p : g) sx += p.x + p.y;
        expect("grid 2x2", g.size() == 4 && sx == 4 * (10 + 90));
    }
    {
        const Scene s({-50, -50}, {50, 50}, {{{0, 0}, {10, 10}, 50}}, 70);
        const double ref = oracle::segment_clearance({-10, 5, 25}, {20, 5, 25}, {{0, 0, 10, 10, 50}});
        near("segment clearance", los_clearance({-10, 5, 25}, {20, 5, 25}, s), ref);
    }
    near("sigmoid", smooth_sigmoid(10, 0, 0.25), 0.92414181997875644880);
    {
        const std::vector<Vec2> p{{200, 0}};
        near("aoi weight", aoi_weight(p, {{0, 0}, 300}, 0.25), 0.60653065971263342360);
    }
    {
        const std::vector<Vec2> p{{5, 5}};
        const std::vector<Building> b{{{0, 0}, {10, 10}, 90}};
        near("collision", collision_penalty(p, b, 0.5, 15), 1808.0424144560632069, 1e-9 * 1808.04);
    }
    {
        const Scene s({-500, -500}, {500, 500}, {{{-50, -20}, {10, 40}, 80}, {{150, 100}, {200, 180}, 60}}, 70);
        const std::vector<Aoi> aois{{{-200, 150}, 120}, {{220, -180}, 90}};
        const std::vector<Vec2> p{{-180, 100}, {30, 60}, {240, -100}};
        const double ref = oracle::placement_loss({{-180, 100}, {30, 60}, {240, -100}}, {-500, -500}, {500, 500}, 70,
                                                  {{-50, -20, 10, 40, 80}, {150, 100, 200, 180, 60}},
                                                  {{-200, 150, 120}, {220, -180, 90}}, {});
        near("placement loss", placement_loss(p, s, aois, {}), ref, 1e-9 * std::abs(ref));
        PlacementHyper only_a;
        only_a.alpha = only_a.gamma = only_a.eta = 0;
        oracle::Weights wa;
        wa.alpha = wa.gamma = wa.eta = 0;
        const double ra = oracle::placement_loss({{-180, 100}, {30, 60}, {240, -100}}, {-500, -500}, {500, 500}, 70, {},
                                                 {{-200, 150, 120}, {220, -180, 90}}, wa);
        near("attraction", placement_loss(p, s, aois, only_a), ra, 1e-9 * std::abs(ra));
    }
    near("3GPP boresight", element_gain_directional(0, std::numbers::pi / 2), 6.3095734448019324943);
    near("3GPP vertical cut", linear_to_db(element_gain_directional(0, deg_to_rad(155))), -4.0);
    near("dipole peak", linear_to_db(element_gain_dipole(std::numbers::pi / 2)), 2.15);
    near("wavelength", speed_of_light / 3.5e9, 0.085654988);
    {
        const Scene s({-200, -200}, {200, 200}, {}, 70);
        const auto grid = CoverageGrid::covering(s, 40);
        TxConfig t{{-30, 20, 70}, {PatternKind::isotropic, 0, 0, 0}};
        PropagationModel m;
        m.rx_pattern = PatternKind::isotropic;
        const auto map = compute_coverage_map(s, std::vector<TxConfig>{t}, grid, m);
        double worst = 0;
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int iy = 0; iy < grid.ny; ++iy) {
                const Vec2 c = grid.cell_center(ix, iy);
                const double d = std::sqrt(std::pow(c.x + 30, 2) + std::pow(c.y - 20, 2) + std::pow(70 - 1.5, 2));
                const double ref = std::pow(speed_of_light / 3.5e9 / (4 * std::numbers::pi * d), 2);
                worst = std::max(worst, std::abs(map.at(0, ix, iy) / ref - 1));
            }
        near("free-space map", worst, 0.0, 1e-12);
    }
    {
        Rng rng(5);
        CoverageMap m;
        m.grid = {{0, 0}, 10, 8, 8};
        m.num_tx = 3;
        for (int k = 0; k < 192; ++k) m.gains.push_back(std::pow(10.0, rng.uniform(-12, -6)));
        const std::vector<double> p{1.5, 20.0, 0.2};
        const auto s = sir_map(m, p);
        std::vector<std::vector<double>> g(3);
        for (int i = 0; i < 3; ++i) {
            const auto t = m.tx_gains(i);
            g[static_cast<std::size_t>(i)].assign(t.begin(), t.end());
        }
        const auto ref = oracle::sir_db(g, p, 1e-20);
        double worst = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t c = 0; c < 64; ++c) worst = std::max(worst, std::abs(s.db[i * 64 + c] - ref[i][c]));
        near("SIR map", worst, 0.0);

        std::vector<std::uint8_t> mask(64);
        std::vector<int> mask_i(64);
        for (std::size_t c = 0; c < 64; ++c) mask_i[c] = mask[c] = rng.uniform() < 0.5;
        near("effective SIR", masked_mean_db(s.tx_db(1), mask), oracle::masked_mean(ref[1], mask_i));
    }
    {
        const std::vector<double> zeros{0, 0};
        near("NLSE", nlse(zeros, 1.0), -0.69314718055994530942);
        near("LSE", lse(zeros, 1.0), 0.69314718055994530942);
        const std::vector<double> x{0, 25};
        const auto w = softmin_weights(x, 25);
        near("softmin", w[0], 0.73105857863000487925);
    }
    {
        const std::vector<double> initial{-9.595, -0.189, -1.537, -4.213, 4.625, -1.165, 19.760, 25.527, 5.666, 3.248};
        near("Jain oracle", jain_fairness(initial), oracle::jain_db(initial), 1e-12);
        near("Jain reference", jain_fairness(initial), 0.157, 0.005);
    }
    {
        std::vector<double> p{0.0};
        const std::vector<double> g{2.0};
        RmsPropState st;
        double worst = 0;
        for (int k = 1; k <= 50; ++k) {
            const double before = p[0];
            rmsprop_step(p, g, st, 0.1);
            const double want = 0.1 * 2.0 / (std::sqrt(1 - std::pow(0.9, k)) * 2.0 + 1e-8);
            worst = std::max(worst, std::abs((before - p[0]) - want));
        }
        near("rmsprop", worst, 0.0, 1e-12);
    }
    {
        PowerSeries s(40, 1e-9);
        for (int t : {10, 11, 12, 13, 14, 15, 22, 23, 24, 25, 26, 27}) s[static_cast<std::size_t>(t)] = 1e-16;
        expect("two drops", detect_drops(s, {}) == std::vector<DropEvent>{{10, 15}, {22, 27}});
        std::vector<Vec2> traj;
        for (int k = 0; k <= 10; ++k) traj.push_back({static_cast<double>(k * k), 0});
        const auto sched = build_recovery_schedule(traj, {0, 16});
        double worst = 0, prev = 0;
        for (auto q : sched.reaction) {
            worst = std::max(worst, std::abs((q.x - prev) / 12.5 - 1));
            prev = q.x;
        }
        expect("arc length", worst <= 0.01);
    }
    std::string detail = failed.empty() ? "all derived oracle checks agree" : "mismatches:";
    for (const auto& f : failed) detail += " [" + f + "]";
    return {failed.empty(), detail};
}

Outcome drop_detection() {
    int bad = 0;
    auto series = [](int n, std::initializer_list<std::pair<int, int>> lows) {
        PowerSeries s(static_cast<std::size_t>(n), 1e-9);
        for (auto [a, b] : lows)
            for (int t = a; t <= b; ++t) s[static_cast<std::size_t>(t)] = 1e-16;
        return s;
    };
    const DetectorConfig cfg;
    struct Case {
        PowerSeries s;
        std::vector<DropEvent> want;
    };
    const std::vector<Case> cases{
        {series(60, {{22, 44}}), {{22, 44}}},
        {series(60, {}), {}},
        {series(40, {{10, 15}, {22, 27}}), {{10, 15}, {22, 27}}},
        {series(40, {{10, 15}, {21, 27}}), {{10, 27}}},
        {series(60, {{10, 14}, {16, 19}, {23, 30}}), {{10, 30}}},
        {series(30, {{3, 4}, {6, 8}}), {{6, 8}}},
        {series(30, {{3, 4}}), {}},
        {series(60, {{50, 59}}), {{50, 59}}},
        {series(60, {{50, 57}}), {{50, 59}}},
        {series(60, {{58, 59}}), {}},
    };
    for (const auto& c : cases) bad += detect_drops(c.s, cfg) != c.want;
    const std::vector<Vec2> traj{{0, 0}, {300, 40}};
    for (int td = 2; td <= 60; ++td)
        bad += static_cast<int>(build_recovery_schedule(traj, {5, 5 + td}).reaction.size()) != td / 2;
    return {bad == 0, std::to_string(cases.size()) + " constructed series and 59 durations, " + std::to_string(bad) +
                          " mismatches"};
}

Outcome recovery_efficacy() {
    const Scene s({-500, -500}, {500, 500}, {{{-60, 30}, {20, 110}, 150}}, 70);
    const std::vector<Vec2> wp{{150, 0}, {-150, 0}};
    const auto track = simulate_ue_track(s, wp, 60, 5.0);
    const TxConfig tx{{-150, 270, 70}};
    const auto before = received_power_series(track, tx, s);
    const auto drops = detect_drops(before, {1e-11, 3, 5});
    if (drops.size() != 1) return {false, std::to_string(drops.size()) + " drops detected in the canyon run"};
    const DropEvent d = drops[0];
    const auto path = recovery_trajectory({tx.position.x, tx.position.y}, track.positions[static_cast<std::size_t>(d.middle())], s);
    const auto sched = build_recovery_schedule(path, d);
    const auto after = apply_recovery(track, before, sched, tx, s);
    double mb = 0, ma = 0;
    bool identical = true;
    for (std::size_t t = 0; t < before.size(); ++t) {
        const bool inside = static_cast<int>(t) >= d.start && static_cast<int>(t) <= d.end;
        if (inside) {
            mb += before[t];
            ma += after[t];
        } else {
            identical = identical && std::memcmp(&before[t], &after[t], sizeof(double)) == 0;
        }
    }
    const double gain = linear_to_db(ma / mb);
    return {gain >= kRecoveryGainDb && identical,
            "drop (" + std::to_string(d.start) + ", " + std::to_string(d.end) + "), mean power gain " + fmt("%.1f", gain) +
                " dB (need >= 20), non-drop steps " + (identical ? "bit-identical" : "CHANGED")};
}

Outcome interop_round_trips() {
    Rng rng(2025);
    int bad = 0;
    for (int k = 0; k < kRoundTrips; ++k) {
        const auto a = testdocs::random_scenario(rng);
        bad += !(parse_scenario(to_json(a)) == a);
        const auto b = testdocs::random_deployment(rng);
        bad += !(parse_deployment(to_json(b)) == b);
        const auto c = testdocs::random_trajectory(rng);
        bad += !(parse_trajectory(to_json(c)) == c);
        const auto d = testdocs::random_drop_report(rng);
        bad += !(parse_drop_report(to_json(d)) == d);
        const auto e = testdocs::random_schedule(rng);
        bad += !(parse_recovery_schedule(to_json(e)) == e);
    }
    const auto doc = load_scenario(std::string(ABSDEPLOY_TEST_DATA_DIR) + "/five_aoi_scenario.json");
    const bool fixture = doc.aois == kFiveAois;
    return {bad == 0 && fixture, std::to_string(5 * kRoundTrips) + " round trips, " + std::to_string(bad) +
                                     " lossy; five-AOI fixture " + (fixture ? "exact" : "MISMATCH")};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism(const std::string& cli, const fs::path& work) {
    if (cli.empty()) return {false, "command line tool not available"};
    const std::string data = ABSDEPLOY_TEST_DATA_DIR;
    const std::string scen = data + "/five_aoi_scenario.json";
    std::vector<std::string> diffs;
    int commands = 0;
    for (int rep = 0; rep < 2; ++rep) {
        const fs::path dir = work / ("rep" + std::to_string(rep));
        fs::remove_all(dir);
        fs::create_directories(dir);
        const std::string d = dir.string();
        const std::vector<std::string> cmds{
            "place --scenario " + scen + " --out " + d + "/place --seed 7 --runs 2",
            "orient --scenario " + scen + " --deployment " + d + "/place/run_0/deployment.json --out " + d +
                "/orient --iters 4",
            "metrics --scenario " + scen + " --deployment " + d + "/orient/deployment.json --out " + d + "/metrics",
            "validate --scenario " + scen + " --deployment " + d + "/orient/deployment.json --out " + d +
                "/validate --steps 20 --seed 3",
            "recover --scenario " + data + "/canyon_scenario.json --deployment " + data +
                "/canyon_deployment.json --out " + d + "/recover --waypoints \"150,0;-150,0\" --t-min 1e-11",
        };
        commands = static_cast<int>(cmds.size());
        int idx = 0;
        for (const auto& c : cmds) {
            const std::string line = "\"" + cli + "\" " + c + " > \"" + d + "/stdout_" + std::to_string(idx++) + ".txt\" 2>&1";
            if (std::system(line.c_str()) != 0) return {false, "command failed: " + c};
        }
    }
    std::size_t files = 0;
    const fs::path a = work / "rep0", b = work / "rep1";
    for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), a);
        ++files;
        std::string left = slurp(e.path()), right = slurp(b / rel);
        // Console output echoes the output directory; compare it with the
        // directory names normalized.
        if (rel.filename().string().rfind("stdout_", 0) == 0) {
            for (auto* s : {&left, &right}) {
                for (const auto& tag : {std::string("rep0"), std::string("rep1")})
                    for (std::size_t pos; (pos = s->find(tag)) != std::string::npos;) s->replace(pos, tag.size(), "repX");
            }
        }
        if (left != right) diffs.push_back(rel.string());
    }
    std::string detail = std::to_string(commands) + " commands, " + std::to_string(files) + " files compared";
    for (const auto& f : diffs) detail += ", differs: " + f;
    return {diffs.empty() && files > 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string cli;
    std::string work = "acceptance_work";
    app.add_option("--cli", cli, "path of the absdeploy executable");
    app.add_option("--work", work, "scratch directory");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"placement satisfaction", placement_satisfaction},
        {"gradient correctness", gradient_correctness},
        {"smooth extrema properties", smooth_extrema},
        {"max-min behavior", maxmin_behavior},
        {"weighted AOI behavior", weighted_aoi_behavior},
        {"unit oracles", unit_oracles},
        {"drop detection exactness", drop_detection},
        {"recovery efficacy", recovery_efficacy},
        {"interop round trips", interop_round_trips},
        {"CLI determinism", [&] { return cli_determinism(cli, fs::absolute(work)); }},
    };
    int failures = 0;
    int index = 1;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
