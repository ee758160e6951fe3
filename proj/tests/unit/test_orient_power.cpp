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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absdeploy/errors.hpp"
#include "absdeploy/interference.hpp"
#include "absdeploy/orient_power.hpp"
#include "absdeploy/random.hpp"
#include "approx.hpp"
#include "doctest.h"

using namespace absdeploy;

namespace {

constexpr double pi = std::numbers::pi;

Scene small_city() {
    return Scene({-250, -250}, {250, 250}, {{{-40, 60}, {10, 120}, 90}, {{80, -150}, {140, -90}, 50}}, 70);
}

const std::vector<Vec2> kTriangle{{-80, -40}, {70, -50}, {60, 90}};
const std::vector<Aoi> kAois{{{-150, 100}, 60}, {{150, -20}, 50}};

OrientPowerParams random_init(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_params(n, {}, rng);
}

double rel_error(const OrientPowerProblem& prob, const std::vector<Vec2>& pos, const OrientPowerParams& params) {
    const auto ev = prob.evaluate(pos, params, true);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < params.size(); ++i)
        for (int k = 0; k < 5; ++k) {
            const double h = k < 2 ? 1e-3 : (k < 4 ? 1e-5 : 1e-4);
            auto pp = pos, pm = pos;
            auto qp = params, qm = params;
            switch (k) {
                case 0: pp[i].x += h; pm[i].x -= h; break;
                case 1: pp[i].y += h; pm[i].y -= h; break;
                case 2: qp[i].azimuth += h; qm[i].azimuth -= h; break;
                case 3: qp[i].tilt += h; qm[i].tilt -= h; break;
                default: qp[i].power_dbm += h; qm[i].power_dbm -= h; break;
            }
            const double fd = (prob.evaluate(pp, qp, false).loss - prob.evaluate(pm, qm, false).loss) / (2 * h);
            num += std::pow(ev.gradient[i][static_cast<std::size_t>(k)] - fd, 2);
            den += fd * fd;
        }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

}  // namespace

TEST_SUITE("orient_power") {

TEST_CASE("clamping projects into the parameter box") {
    const OrientPowerParams in{{0.4, 1.3, 30.0}};
    CHECK(clamp_params(in) == in);
    const OrientPowerParams over{{7.0, pi, 50.0}, {-9.0, 0.1, 0.0}};
    const auto c = clamp_params(over);
    CHECK(c[0].azimuth == 2 * pi);
    CHECK(c[0].tilt == 6 * pi / 7);
    CHECK(c[0].power_dbm == 43.0);
    CHECK(c[1].azimuth == -2 * pi);
    CHECK(c[1].tilt == pi / 7);
    CHECK(c[1].power_dbm == 13.0);
    CHECK(clamp_params(c) == c);
}

TEST_CASE("random parameters respect the bounds") {
    const auto p = random_init(200, 3);
    for (const auto& o : p) {
        CHECK(o.azimuth >= -2 * pi);
        CHECK(o.azimuth <= 2 * pi);
        CHECK(o.tilt >= pi / 7);
        CHECK(o.tilt <= 6 * pi / 7);
        CHECK(o.power_dbm >= 13.0);
        CHECK(o.power_dbm <= 43.0);
    }
}

TEST_CASE("method names") {
    for (auto m : {OrientMethod::max_min, OrientMethod::weighted_aoi, OrientMethod::average_sir})
        CHECK(orient_method_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(orient_method_from_string("best"), InvalidArgumentError);
}

TEST_CASE("weighted AOI method needs AOIs") {
    CHECK_THROWS_AS(OrientPowerProblem(small_city(), kTriangle, {}, OrientMethod::weighted_aoi,
                                       CoverageGrid::covering(small_city(), 25)),
                    InvalidArgumentError);
}

TEST_CASE("max-min loss gradient matches finite differences") {
    const Scene s = small_city();
    const OrientPowerProblem prob(s, kTriangle, {}, OrientMethod::max_min, CoverageGrid::covering(s, 25));
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(rel_error(prob, kTriangle, random_init(3, seed)) <= 1e-3);
}

TEST_CASE("weighted AOI loss gradient matches finite differences") {
    const Scene s = small_city();
    const OrientPowerProblem prob(s, kTriangle, kAois, OrientMethod::weighted_aoi, CoverageGrid::covering(s, 25));
    for (std::uint64_t seed = 10; seed < 15; ++seed) CHECK(rel_error(prob, kTriangle, random_init(3, seed)) <= 1e-3);
}

TEST_CASE("max-min loss without the mean term is the negative smooth minimum") {
    const Scene s = small_city();
    SirLossConfig cfg;
    cfg.xi = 0.0;
    const OrientPowerProblem prob(s, kTriangle, {}, OrientMethod::max_min, CoverageGrid::covering(s, 25), {}, cfg);
    const auto ev = prob.evaluate(random_init(3, 4), false);
    CHECK(ev.loss == -nlse(ev.effective_sir, cfg.beta_l));
}

TEST_CASE("a common power offset leaves the loss unchanged") {
    const Scene s = small_city();
    SirLossConfig cfg;
    cfg.epsilon = 1e-40;
    const OrientPowerProblem prob(s, kTriangle, {}, OrientMethod::max_min, CoverageGrid::covering(s, 25), {}, cfg);
    auto p = random_init(3, 6);
    for (auto& o : p) o.power_dbm = std::min(o.power_dbm, 33.0);
    auto q = p;
    for (auto& o : q) o.power_dbm += 7.5;
    CHECK(prob.evaluate(q, false).loss == rel(prob.evaluate(p, false).loss).epsilon(1e-9));
}

TEST_CASE("zero epochs return the initial parameters") {
    const Scene s = small_city();
    const OrientPowerProblem prob(s, kTriangle, {}, OrientMethod::max_min, CoverageGrid::covering(s, 25));
    OptimizerSchedule sched;
    sched.max_epochs = 0;
    const auto init = random_init(3, 1);
    CHECK(optimize_orient_power(prob, init, sched).params == init);
}

TEST_CASE("max-min optimization raises the weakest ABS") {
    const Scene s({-400, -400}, {400, 400}, {}, 70);
    const std::vector<Vec2> pos{{-120, 0}, {0, 0}, {120, 0}};
    const OrientPowerProblem prob(s, pos, {}, OrientMethod::max_min, CoverageGrid::covering(s, 20));
    const OrientPowerParams init(3);
    OptimizerSchedule sched;
    sched.max_epochs = 60;
    const auto r = optimize_orient_power(prob, init, sched);
    const auto before = prob.map_effective_sir(init), after = prob.map_effective_sir(r.params);
    CHECK(*std::min_element(after.begin(), after.end()) >= *std::min_element(before.begin(), before.end()));

    // Best-loss channel never increases, parameters stay feasible.
    double best = 1e300;
    for (const auto& e : r.trace) {
        CHECK(e.best_loss <= best);
        best = e.best_loss;
        CHECK(clamp_params(e.params) == e.params);
    }
    CHECK(r.best_loss == best);
    CHECK(clamp_params(r.params) == r.params);
    CHECK((r.stop_reason == "max_epochs" || r.stop_reason == "lr_floor"));
}

TEST_CASE("learning rate decays on plateaus and is deterministic") {
    const Scene s = small_city();
    const OrientPowerProblem prob(s, kTriangle, kAois, OrientMethod::weighted_aoi, CoverageGrid::covering(s, 25));
    OptimizerSchedule sched;
    sched.algorithm = OptimizerKind::adam;
    sched.learning_rate = 0.05;
    sched.max_epochs = 40;
    sched.patience = 2;
    const auto init = random_init(3, 8);
    const auto a = optimize_orient_power(prob, init, sched);
    const auto b = optimize_orient_power(prob, init, sched);
    CHECK(a.params == b.params);
    REQUIRE(!a.trace.empty());
    for (std::size_t k = 1; k < a.trace.size(); ++k) {
        const double ratio = a.trace[k].learning_rate / a.trace[k - 1].learning_rate;
        CHECK((ratio == 1.0 || ratio == rel(0.5)));
    }
}

TEST_CASE("an ABS without coverage is reported") {
    const Scene s({-200, -200}, {200, 200}, {}, 70);
    SirLossConfig cfg;
    cfg.mask_threshold = 1.0;  // no gain can exceed 1
    const OrientPowerProblem prob(s, kTriangle, {}, OrientMethod::max_min, CoverageGrid::covering(s, 25), {}, cfg);
    CHECK_THROWS_AS(prob.evaluate(OrientPowerParams(3), false), NoCoverageError);
}

}  // TEST_SUITE
