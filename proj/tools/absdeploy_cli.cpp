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

// absdeploy: command line front end.
//
//   absdeploy place    --scenario S --out DIR [--runs K] [--seed N] [--iters N] [--lr X]
//   absdeploy orient   --scenario S --deployment D --out DIR [--method maxmin|aoi|avgsir]
//   absdeploy validate --scenario S --deployment D --out DIR [--steps 60] [--ues 50]
//   absdeploy recover  --scenario S --deployment D --out DIR (--waypoints "x,y;x,y" | --aoi K)
//   absdeploy metrics  --scenario S --deployment D [--out DIR]
//
// Exit status: 0 success, 2 usage, 3 validation, 4 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "absdeploy/interference.hpp"
#include "absdeploy/interop.hpp"
#include "absdeploy/orient_power.hpp"
#include "absdeploy/placement.hpp"
#include "absdeploy/propagation.hpp"
#include "absdeploy/random.hpp"
#include "absdeploy/resilience.hpp"

namespace fs = std::filesystem;
using namespace absdeploy;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

// Minimum pairwise distance of the semi-random initial positions.
constexpr double kInitSeparation = 50.0;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw InvalidArgumentError("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

void write_csv_file(const fs::path& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    write_csv(os, header, rows);
    write_text_file(path.string(), os.str());
}

struct Stats {
    double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0, jain = 0.0;
};

Stats summarize(const std::vector<double>& v) {
    Stats s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(v.size()));
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    s.jain = jain_fairness(v);
    return s;
}

// ---------------------------------------------------------------------------

struct PlaceArgs {
    std::string scenario, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> iters;
    std::optional<double> lr;
    int runs = 1;
};

int run_place(const PlaceArgs& a) {
    if (a.runs < 1) throw UsageError("--runs must be at least 1");
    const ScenarioDoc doc = load_scenario(a.scenario);
    if (doc.aois.empty()) throw InvalidArgumentError("placement needs at least one AOI in the scenario");
    const Scene scene = doc.scene();
    PlacementHyper hyper = doc.hyper;
    if (a.iters) hyper.max_iterations = *a.iters;
    if (a.lr) hyper.learning_rate = *a.lr;
    const std::uint64_t seed0 = a.seed.value_or(doc.seed);
    const fs::path out = prepare_out(a.out);

    std::ostringstream summary;
    summary << "run,seed,satisfaction,iterations,best_loss\n";
    double total = 0.0;
    for (int r = 0; r < a.runs; ++r) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(r);
        const auto init = semi_random_init(scene, doc.num_abs, seed, kInitSeparation, hyper.rooftop_tolerance);
        const auto res = optimize_placement(scene, doc.aois, init, hyper, seed);
        const double sat = aoi_satisfaction(res.positions, doc.aois);
        total += sat;

        const OrientPowerParams params(res.positions.size(), AbsOrientation{0.0, std::numbers::pi / 2.0, doc.rf.power_dbm});
        TrajectoryDoc traj;
        for (std::size_t i = 0; i < res.positions.size(); ++i) {
            EntityTrajectory e{"abs-" + std::to_string(i), "abs", {}};
            for (std::size_t k = 0; k < res.trace.positions.size(); ++k)
                e.points.push_back({static_cast<long>(k), res.trace.positions[k][i].x, res.trace.positions[k][i].y});
            traj.entities.push_back(std::move(e));
        }
        const fs::path dir = a.runs == 1 ? out : out / ("run_" + std::to_string(r));
        if (a.runs > 1) prepare_out(dir.string());
        save_document((dir / "deployment.json").string(), DeploymentDoc::from(res.positions, params));
        save_document((dir / "trajectory.json").string(), traj);

        summary << r << ',' << seed << ',' << format_double(sat) << ',' << res.trace.loss.size() << ','
                << format_double(res.trace.best_loss) << '\n';
        std::cout << "run " << r << " seed " << seed << " S_AOI " << fmt("%.4f", sat) << " iterations "
                  << res.trace.loss.size() << " (" << to_string(res.trace.reason) << ")\n";
    }
    write_text_file((out / "placement_summary.csv").string(), summary.str());
    std::cout << "mean S_AOI " << fmt("%.4f", total / a.runs) << " over " << a.runs << " run(s)\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct OrientArgs {
    std::string scenario, deployment, out, method = "maxmin", optimizer = "rmsprop";
    std::optional<int> iters;
    std::optional<double> lr;
};

OrientPowerProblem make_problem(const ScenarioDoc& doc, const DeploymentDoc& dep, OrientMethod method) {
    const Scene scene = doc.scene();
    return OrientPowerProblem(scene, dep.positions(), doc.aois, method, CoverageGrid::covering(scene, doc.rf.cell_size),
                              doc.propagation(), doc.sir, doc.antenna());
}

void print_sirs(const char* label, const std::vector<double>& r) {
    const Stats s = summarize(r);
    std::cout << label << " effective SIR [dB]:";
    for (double v : r) std::cout << ' ' << fmt("%.2f", v);
    std::cout << "  mean " << fmt("%.2f", s.mean) << " min " << fmt("%.2f", s.min) << " Jain "
              << fmt("%.3f", s.jain) << '\n';
}

int run_orient(const OrientArgs& a) {
    const ScenarioDoc doc = load_scenario(a.scenario);
    const DeploymentDoc dep = load_deployment(a.deployment);
    if (dep.abs.empty()) throw InvalidArgumentError("deployment has no ABS");
    const OrientMethod method = orient_method_from_string(a.method);
    const OrientPowerProblem problem = make_problem(doc, dep, method);
    OptimizerSchedule sched;
    sched.algorithm = a.optimizer == "adam" ? OptimizerKind::adam : OptimizerKind::rmsprop;
    sched.learning_rate = a.lr.value_or(method == OrientMethod::weighted_aoi ? 0.05 : 0.1);
    if (a.iters) sched.max_epochs = *a.iters;
    const ParamBounds bounds;
    const auto init = clamp_params(dep.params(), bounds);
    const fs::path out = prepare_out(a.out);

    const auto res = optimize_orient_power(problem, init, sched, bounds);
    std::vector<std::vector<double>> rows;
    for (const auto& e : res.trace) rows.push_back({double(e.epoch), e.loss, e.best_loss, e.learning_rate});
    write_csv_file(out / "epochs.csv", {"epoch", "loss", "best_loss", "learning_rate"}, rows);

    DeploymentDoc result = DeploymentDoc::from(dep.positions(), res.params);
    for (std::size_t i = 0; i < result.abs.size(); ++i) result.abs[i].id = dep.abs[i].id;
    save_document((out / "deployment.json").string(), result);

    std::cout << "method " << to_string(method) << ", " << res.trace.size() << " epochs (" << res.stop_reason
              << "), best loss " << fmt("%.6f", res.best_loss) << '\n';
    print_sirs("initial", problem.map_effective_sir(init));
    print_sirs("final", problem.map_effective_sir(res.params));
    if (!doc.aois.empty()) {
        const auto before = problem.serving_sir(init), after = problem.serving_sir(res.params);
        for (std::size_t m = 0; m < doc.aois.size(); ++m)
            std::cout << "AOI " << m << " serving SIR " << fmt("%.2f", before[m]) << " -> " << fmt("%.2f", after[m])
                      << " dB\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
    std::string scenario, deployment, out;
    std::optional<std::uint64_t> seed;
    int steps = 60;
    double step_seconds = 1.0;
    int ues = 50;
    double speed = 1.5;
};

// Index of the ABS with the highest window effective SIR for every AOI.
std::vector<int> serving_abs(const OrientPowerProblem& problem, std::span<const AbsOrientation> params) {
    const auto txs = problem.tx_configs(problem.positions(), params);
    const auto map = compute_coverage_map(problem.scene(), txs, problem.grid(), problem.model());
    std::vector<double> watts;
    for (const auto& t : txs) watts.push_back(t.power_watts());
    const auto sir = sir_map(map, watts, problem.loss_config().epsilon);
    const auto mask = coverage_mask(map, problem.mask_threshold());
    std::vector<int> out;
    for (const auto& w : problem.windows()) {
        const auto r = window_effective_sir(sir, mask, w);
        out.push_back(static_cast<int>(std::max_element(r.begin(), r.end()) - r.begin()));
    }
    return out;
}

int run_validate(const ValidateArgs& a) {
    if (a.steps < 1 || a.ues < 1) throw UsageError("--steps and --ues must be at least 1");
    const ScenarioDoc doc = load_scenario(a.scenario);
    if (doc.aois.empty()) throw InvalidArgumentError("validation needs at least one AOI in the scenario");
    const DeploymentDoc dep = load_deployment(a.deployment);
    if (dep.abs.empty()) throw InvalidArgumentError("deployment has no ABS");
    const Scene scene = doc.scene();
    const auto params = dep.params();
    const OrientPowerProblem problem = make_problem(doc, dep, OrientMethod::weighted_aoi);
    const auto serving = serving_abs(problem, params);
    const auto txs = problem.tx_configs(problem.positions(), params);
    PropagationModel model = doc.propagation();
    const fs::path out = prepare_out(a.out);

    Rng master(a.seed.value_or(doc.seed));
    const std::size_t M = doc.aois.size();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(a.steps));
    for (int t = 0; t < a.steps; ++t) rows[static_cast<std::size_t>(t)] = {double(t), t * a.step_seconds};
    for (std::size_t m = 0; m < M; ++m) {
        std::vector<double> acc(static_cast<std::size_t>(a.steps), 0.0);
        const auto s = static_cast<std::size_t>(serving[m]);
        for (int u = 0; u < a.ues; ++u) {
            const auto track = simulate_ue_track(scene, doc.aois[m], a.steps, a.speed, master.next(), a.step_seconds);
            for (int t = 0; t < a.steps; ++t) {
                const Vec2 p = track.positions[static_cast<std::size_t>(t)];
                double own = 0.0, other = 0.0;
                for (std::size_t i = 0; i < txs.size(); ++i) {
                    const double rss = txs[i].power_watts() * link_gain(txs[i], {p.x, p.y, model.rx_height}, scene, model);
                    (i == s ? own : other) += rss;
                }
                acc[static_cast<std::size_t>(t)] += linear_to_db(own / (other + doc.sir.epsilon));
            }
        }
        double mean = 0.0;
        for (int t = 0; t < a.steps; ++t) {
            const double v = acc[static_cast<std::size_t>(t)] / a.ues;
            rows[static_cast<std::size_t>(t)].push_back(v);
            mean += v / a.steps;
        }
        std::cout << "AOI " << m << " serving ABS " << dep.abs[s].id << " mean UE SIR " << fmt("%.2f", mean) << " dB\n";
    }
    std::vector<std::string> header{"step", "time_s"};
    for (std::size_t m = 0; m < M; ++m) header.push_back("aoi_" + std::to_string(m) + "_sir_db");
    write_csv_file(out / "sir_per_step.csv", header, rows);
    return 0;
}

// ---------------------------------------------------------------------------

struct RecoverArgs {
    std::string scenario, deployment, out, waypoints;
    std::optional<int> aoi;
    std::optional<std::uint64_t> seed;
    int abs = 0;
    int steps = 60;
    double step_seconds = 1.0;
    double speed = 5.0;
    double t_min = 1e-14;
    int c_min = 3;
    int s_p = 5;
};

std::vector<Vec2> parse_waypoints(const std::string& text) {
    std::vector<Vec2> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        double x = 0.0, y = 0.0;
        char comma = 0, extra = 0;
        std::istringstream is(item);
        if (!(is >> x >> comma >> y) || comma != ',' || (is >> extra))
            throw UsageError("malformed waypoint '" + item + "' (expected x,y)");
        pts.push_back({x, y});
    }
    if (pts.empty()) throw UsageError("--waypoints needs at least one x,y pair");
    return pts;
}

int run_recover(const RecoverArgs& a) {
    const ScenarioDoc doc = load_scenario(a.scenario);
    const DeploymentDoc dep = load_deployment(a.deployment);
    if (a.abs < 0 || a.abs >= static_cast<int>(dep.abs.size()))
        throw UsageError("--abs " + std::to_string(a.abs) + " is not an index into the deployment");
    const Scene scene = doc.scene();
    const PropagationModel model = doc.propagation();

    UeTrack track;
    if (a.aoi) {
        if (*a.aoi < 0 || *a.aoi >= static_cast<int>(doc.aois.size()))
            throw UsageError("--aoi " + std::to_string(*a.aoi) + " is not an index into the scenario AOIs");
        track = simulate_ue_track(scene, doc.aois[static_cast<std::size_t>(*a.aoi)], a.steps, a.speed,
                                  a.seed.value_or(doc.seed), a.step_seconds);
    } else {
        const auto wp = parse_waypoints(a.waypoints);
        track = simulate_ue_track(scene, wp, a.steps, a.speed, a.step_seconds);
    }

    const auto& d = dep.abs[static_cast<std::size_t>(a.abs)];
    TxConfig tx;
    tx.position = {d.x, d.y, scene.hover_elevation()};
    tx.antenna = doc.antenna();
    tx.antenna.azimuth = deg_to_rad(d.azimuth_deg);
    tx.antenna.tilt = deg_to_rad(d.tilt_deg);
    tx.power_dbm = d.power_dbm;

    const DetectorConfig det{a.t_min, a.c_min, a.s_p};
    const auto before = received_power_series(track, tx, scene, model);
    const auto events = detect_drops(before, det);
    const fs::path out = prepare_out(a.out);
    save_document((out / "drops.json").string(), DropReportDoc{det, events});

    RecoveryConfig rc;
    rc.kappa_b = doc.hyper.kappa_b;
    rc.c_b = doc.hyper.c_b;
    rc.rooftop_tolerance = doc.hyper.rooftop_tolerance;
    auto after = before;
    std::vector<Vec2> abs_pos(track.steps(), Vec2{d.x, d.y});
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& e = events[k];
        std::cout << "drop " << k << ": t_s " << e.start << " t_e " << e.end << " T_d " << e.duration() << '\n';
        if (e.duration() < 2) {
            std::cout << "  skipped: too short for a recovery schedule\n";
            continue;
        }
        const Vec2 target = track.positions[static_cast<std::size_t>(e.middle())];
        const auto traj = recovery_trajectory({d.x, d.y}, target, scene, rc);
        const auto sched = build_recovery_schedule(traj, e);
        after = apply_recovery(track, after, sched, tx, scene, model);
        for (int t = e.start + 1; t <= e.end; ++t) abs_pos[static_cast<std::size_t>(t)] = *sched.position_at(t);
        save_document((out / ("schedule_" + std::to_string(k) + ".json")).string(), sched);
        save_document((out / ("schedule_" + std::to_string(k) + "_trajectory.json")).string(),
                      schedule_trajectory(sched, "abs-" + std::to_string(d.id), track.step_seconds));
        double mb = 0.0, ma = 0.0;
        for (int t = e.start; t <= e.end; ++t) {
            mb += before[static_cast<std::size_t>(t)];
            ma += after[static_cast<std::size_t>(t)];
        }
        std::cout << "  trajectory " << traj.size() << " iterates, mean drop power " << fmt("%.3e", mb / (e.duration() + 1))
                  << " W -> " << fmt("%.3e", ma / (e.duration() + 1)) << " W\n";
    }
    if (events.empty()) std::cout << "no drop below " << fmt("%.3e", a.t_min) << " W\n";

    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < track.steps(); ++t)
        rows.push_back({double(t), t * track.step_seconds, track.positions[t].x, track.positions[t].y, abs_pos[t].x,
                        abs_pos[t].y, before[t], after[t]});
    write_csv_file(out / "power.csv", {"step", "time_s", "ue_x", "ue_y", "abs_x", "abs_y", "before_w", "after_w"}, rows);
    return 0;
}

// ---------------------------------------------------------------------------

struct MetricsArgs {
    std::string scenario, deployment, out;
};

int run_metrics(const MetricsArgs& a) {
    const ScenarioDoc doc = load_scenario(a.scenario);
    const DeploymentDoc dep = load_deployment(a.deployment);
    if (dep.abs.empty()) throw InvalidArgumentError("deployment has no ABS");
    const OrientPowerProblem problem = make_problem(doc, dep, OrientMethod::max_min);
    const auto r = problem.map_effective_sir(dep.params());
    const Stats s = summarize(r);

    std::ostringstream os;
    os << "abs,effective_sir_db\n";
    for (std::size_t i = 0; i < r.size(); ++i) os << dep.abs[i].id << ',' << format_double(r[i]) << '\n';
    std::cout << "ABS  effective SIR [dB]\n";
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << dep.abs[i].id << "  " << fmt("%.3f", r[i]) << '\n';
    std::cout << "mean " << fmt("%.3f", s.mean) << "  std " << fmt("%.3f", s.stddev) << "  min " << fmt("%.3f", s.min)
              << "  max " << fmt("%.3f", s.max) << "  Jain " << fmt("%.3f", s.jain) << '\n';
    if (!a.out.empty()) {
        const fs::path out = prepare_out(a.out);
        write_text_file((out / "metrics_per_abs.csv").string(), os.str());
        write_csv_file(out / "metrics_summary.csv", {"mean_db", "std_db", "min_db", "max_db", "jain"},
                       {{s.mean, s.stddev, s.min, s.max, s.jain}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-based deployment of airborne base stations"};
    app.require_subcommand(1);

    PlaceArgs pa;
    auto* place = app.add_subcommand("place", "optimize ABS positions for the scenario AOIs");
    place->add_option("--scenario", pa.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    place->add_option("--out", pa.out, "output directory")->required();
    place->add_option("--seed", pa.seed, "base seed (default: scenario seed)");
    place->add_option("--iters", pa.iters, "maximum optimizer iterations")->check(CLI::NonNegativeNumber);
    place->add_option("--lr", pa.lr, "learning rate")->check(CLI::PositiveNumber);
    place->add_option("--runs", pa.runs, "independent runs with seeds seed, seed+1, ...");

    OrientArgs oa;
    auto* orient = app.add_subcommand("orient", "optimize ABS orientation and transmit power");
    orient->add_option("--scenario", oa.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    orient->add_option("--deployment", oa.deployment, "deployment JSON")->required()->check(CLI::ExistingFile);
    orient->add_option("--out", oa.out, "output directory")->required();
    orient->add_option("--method", oa.method, "loss")->check(CLI::IsMember({"maxmin", "aoi", "avgsir"}));
    orient->add_option("--optimizer", oa.optimizer, "update rule")->check(CLI::IsMember({"rmsprop", "adam"}));
    orient->add_option("--iters", oa.iters, "maximum epochs")->check(CLI::NonNegativeNumber);
    orient->add_option("--lr", oa.lr, "initial learning rate")->check(CLI::PositiveNumber);

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "per-step UE SIR inside every AOI");
    validate->add_option("--scenario", va.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--deployment", va.deployment, "deployment JSON")->required()->check(CLI::ExistingFile);
    validate->add_option("--out", va.out, "output directory")->required();
    validate->add_option("--seed", va.seed, "mobility seed (default: scenario seed)");
    validate->add_option("--steps", va.steps, "time steps");
    validate->add_option("--step-seconds", va.step_seconds, "step duration [s]")->check(CLI::PositiveNumber);
    validate->add_option("--ues", va.ues, "UEs per AOI");
    validate->add_option("--speed", va.speed, "UE speed [m/s]")->check(CLI::NonNegativeNumber);

    RecoverArgs ra;
    auto* recover = app.add_subcommand("recover", "detect power drops of one UE and plan ABS recovery");
    recover->add_option("--scenario", ra.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    recover->add_option("--deployment", ra.deployment, "deployment JSON")->required()->check(CLI::ExistingFile);
    recover->add_option("--out", ra.out, "output directory")->required();
    recover->add_option("--abs", ra.abs, "serving ABS index in the deployment");
    auto* wp = recover->add_option("--waypoints", ra.waypoints, "UE path \"x,y;x,y;...\"");
    auto* aoi = recover->add_option("--aoi", ra.aoi, "random walk inside this AOI instead");
    wp->excludes(aoi);
    aoi->excludes(wp);
    recover->add_option("--seed", ra.seed, "mobility seed for --aoi");
    recover->add_option("--steps", ra.steps, "time steps")->check(CLI::PositiveNumber);
    recover->add_option("--step-seconds", ra.step_seconds, "step duration [s]")->check(CLI::PositiveNumber);
    recover->add_option("--speed", ra.speed, "UE speed [m/s]")->check(CLI::NonNegativeNumber);
    recover->add_option("--t-min", ra.t_min, "drop threshold [W]")->check(CLI::PositiveNumber);
    recover->add_option("--c-min", ra.c_min, "confirmation count")->check(CLI::PositiveNumber);
    recover->add_option("--s-p", ra.s_p, "tolerated spurious peaks")->check(CLI::NonNegativeNumber);

    MetricsArgs ma;
    auto* metrics = app.add_subcommand("metrics", "effective SIR summary of a deployment");
    metrics->add_option("--scenario", ma.scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
    metrics->add_option("--deployment", ma.deployment, "deployment JSON")->required()->check(CLI::ExistingFile);
    metrics->add_option("--out", ma.out, "optional output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*place) return run_place(pa);
        if (*orient) return run_orient(oa);
        if (*validate) return run_validate(va);
        if (*recover) {
            if (ra.waypoints.empty() && !ra.aoi) throw UsageError("recover needs --waypoints or --aoi");
            return run_recover(ra);
        }
        if (*metrics) return run_metrics(ma);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.category() == Error::Category::usage        ? kExitUsage
               : e.category() == Error::Category::validation ? kExitValidation
                                                             : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
