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

#include "absdeploy/interop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "absdeploy/units.hpp"

namespace absdeploy {

using json = nlohmann::ordered_json;

namespace {

std::string escape_pointer(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Read-only cursor into a parsed document that remembers its JSON pointer.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_.empty() ? "/" : path_, what); }

    const std::string& path() const { return path_; }

    void expect_object() const {
        if (!j_.is_object()) fail("expected an object");
    }

    bool has(const char* key) const {
        expect_object();
        return j_.contains(key);
    }

    Node operator[](const char* key) const {
        expect_object();
        const auto it = j_.find(key);
        const std::string p = path_ + "/" + escape_pointer(key);
        if (it == j_.end()) throw ParseError(p, "missing required field");
        return Node(*it, p);
    }

    Node item(std::size_t i) const { return Node(j_.at(i), path_ + "/" + std::to_string(i)); }

    void only(std::initializer_list<std::string_view> keys) const {
        expect_object();
        for (const auto& item : j_.items()) {
            if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
                throw ParseError(path_ + "/" + escape_pointer(item.key()), "unknown key");
        }
    }

    std::size_t size() const {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    double number() const {
        if (!j_.is_number()) fail("expected a number");
        const double v = j_.get<double>();
        if (!std::isfinite(v)) fail("expected a finite number");
        return v;
    }

    long long integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        if (j_.is_number_unsigned() && j_.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
            fail("integer out of range");
        return j_.get<long long>();
    }

    int small_int() const {
        const long long v = integer();
        if (v < INT32_MIN || v > INT32_MAX) fail("integer out of range");
        return static_cast<int>(v);
    }

    std::uint64_t unsigned_integer() const {
        if (!j_.is_number_unsigned()) fail("expected a non-negative integer");
        return j_.get<std::uint64_t>();
    }

    std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    Vec2 point() const {
        if (size() != 2) fail("expected [x, y]");
        return {item(0).number(), item(1).number()};
    }

private:
    const json& j_;
    std::string path_;
};

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
}

// Checks the version and document kind and returns the root cursor.
Node open_document(const json& root, const char* kind) {
    Node n(root, "");
    n.expect_object();
    const Node version = n["schema_version"];
    const std::string v = version.string();
    int major = 0, minor = 0;
    char tail = 0;
    if (std::sscanf(v.c_str(), "%d.%d%c", &major, &minor, &tail) != 2 || major < 0 || minor < 0)
        version.fail("malformed schema version '" + v + "'");
    if (major != kSchemaMajor)
        version.fail("unsupported schema major version " + std::to_string(major) + " (this build reads " +
                     std::to_string(kSchemaMajor) + ".x)");
    const Node k = n["kind"];
    if (k.string() != kind) k.fail("expected a '" + std::string(kind) + "' document, got '" + k.string() + "'");
    return n;
}

json header(const char* kind) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

double finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidArgumentError(std::string("cannot serialize non-finite ") + what);
    return v;
}

json point(Vec2 p) { return json::array({finite(p.x, "coordinate"), finite(p.y, "coordinate")}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string attraction_name(AttractionForm f) { return f == AttractionForm::printed ? "printed" : "shifted"; }

}  // namespace

PropagationModel ScenarioDoc::propagation() const {
    PropagationModel m;
    m.frequency_hz = rf.frequency_hz;
    m.rx_height = rf.rx_height;
    return m;
}

AntennaConfig ScenarioDoc::antenna() const {
    AntennaConfig a;
    a.pattern = rf.pattern;
    a.boresight_gain_dbi = rf.boresight_gain_dbi;
    return a;
}

std::string to_json(const ScenarioDoc& doc) {
    json j = header("scenario");
    json scene;
    scene["extent_min"] = point(doc.extent_min);
    scene["extent_max"] = point(doc.extent_max);
    scene["hover_elevation"] = finite(doc.hover_elevation, "elevation");
    scene["buildings"] = json::array();
    for (const auto& b : doc.buildings)
        scene["buildings"].push_back({{"min", point(b.min)}, {"max", point(b.max)}, {"height", finite(b.height, "height")}});
    j["scene"] = scene;
    j["aois"] = json::array();
    for (const auto& a : doc.aois) j["aois"].push_back({{"center", point(a.center)}, {"radius", finite(a.radius, "radius")}});
    j["rf"] = {{"frequency_hz", doc.rf.frequency_hz},
               {"power_dbm", doc.rf.power_dbm},
               {"rx_height", doc.rf.rx_height},
               {"cell_size", doc.rf.cell_size},
               {"pattern", to_string(doc.rf.pattern)},
               {"boresight_gain_dbi", doc.rf.boresight_gain_dbi}};
    const auto& h = doc.hyper;
    j["hyperparameters"] = {{"alpha", h.alpha},
                            {"beta", h.beta},
                            {"gamma", h.gamma},
                            {"eta", h.eta},
                            {"kappa_a", h.kappa_a},
                            {"kappa_b", h.kappa_b},
                            {"kappa_i", h.kappa_i},
                            {"d_min", h.d_min},
                            {"c_b", h.c_b},
                            {"rooftop_tolerance", h.rooftop_tolerance},
                            {"grid_x", h.grid.points_x},
                            {"grid_y", h.grid.points_y},
                            {"margin", h.grid.margin},
                            {"attraction", attraction_name(h.attraction)},
                            {"learning_rate", h.learning_rate},
                            {"iterations", h.max_iterations},
                            {"patience", h.patience},
                            {"beta_l", doc.sir.beta_l},
                            {"xi", doc.sir.xi},
                            {"temperature", doc.sir.temperature},
                            {"epsilon", doc.sir.epsilon},
                            {"mask_threshold", doc.sir.mask_threshold}};
    for (const auto& item : j["hyperparameters"].items())
        if (item.value().is_number_float()) finite(item.value().get<double>(), "hyperparameter");
    for (const auto& item : j["rf"].items())
        if (item.value().is_number_float()) finite(item.value().get<double>(), "RF parameter");
    j["num_abs"] = doc.num_abs;
    j["seed"] = doc.seed;
    return dump(j);
}

ScenarioDoc parse_scenario(const std::string& text) {
    const json root = parse_text(text);
    const Node n = open_document(root, "scenario");
    n.only({"schema_version", "kind", "scene", "aois", "rf", "hyperparameters", "num_abs", "seed"});
    ScenarioDoc doc;

    const Node scene = n["scene"];
    scene.only({"extent_min", "extent_max", "hover_elevation", "buildings"});
    doc.extent_min = scene["extent_min"].point();
    doc.extent_max = scene["extent_max"].point();
    doc.hover_elevation = scene["hover_elevation"].number();
    if (scene.has("buildings")) {
        const Node list = scene["buildings"];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Node b = list.item(i);
            b.only({"min", "max", "height"});
            doc.buildings.push_back({b["min"].point(), b["max"].point(), b["height"].number()});
        }
    }
    try {
        (void)doc.scene();
    } catch (const Error& e) {
        scene.fail(e.what());
    }

    const Node aois = n["aois"];
    for (std::size_t i = 0; i < aois.size(); ++i) {
        const Node a = aois.item(i);
        a.only({"center", "radius"});
        doc.aois.push_back({a["center"].point(), a["radius"].number()});
        try {
            validate_aoi(doc.scene(), doc.aois.back());
        } catch (const Error& e) {
            a.fail(e.what());
        }
    }

    if (n.has("rf")) {
        const Node rf = n["rf"];
        rf.only({"frequency_hz", "power_dbm", "rx_height", "cell_size", "pattern", "boresight_gain_dbi"});
        if (rf.has("frequency_hz")) doc.rf.frequency_hz = rf["frequency_hz"].number();
        if (rf.has("power_dbm")) doc.rf.power_dbm = rf["power_dbm"].number();
        if (rf.has("rx_height")) doc.rf.rx_height = rf["rx_height"].number();
        if (rf.has("cell_size")) doc.rf.cell_size = rf["cell_size"].number();
        if (rf.has("boresight_gain_dbi")) doc.rf.boresight_gain_dbi = rf["boresight_gain_dbi"].number();
        if (rf.has("pattern")) {
            const Node p = rf["pattern"];
            try {
                doc.rf.pattern = pattern_from_string(p.string());
            } catch (const InvalidArgumentError& e) {
                p.fail(e.what());
            }
        }
        if (!(doc.rf.frequency_hz > 0.0)) rf["frequency_hz"].fail("must be positive");
        if (!(doc.rf.cell_size > 0.0)) rf["cell_size"].fail("must be positive");
    }

    if (n.has("hyperparameters")) {
        const Node h = n["hyperparameters"];
        h.only({"alpha", "beta", "gamma", "eta", "kappa_a", "kappa_b", "kappa_i", "d_min", "c_b", "rooftop_tolerance",
                "grid_x", "grid_y", "margin", "attraction", "learning_rate", "iterations", "patience", "beta_l", "xi",
                "temperature", "epsilon", "mask_threshold"});
        auto set = [&](const char* key, double& dst) {
            if (h.has(key)) dst = h[key].number();
        };
        auto set_int = [&](const char* key, int& dst, int lo) {
            if (!h.has(key)) return;
            const Node v = h[key];
            dst = v.small_int();
            if (dst < lo) v.fail("must be at least " + std::to_string(lo));
        };
        auto& p = doc.hyper;
        set("alpha", p.alpha);
        set("beta", p.beta);
        set("gamma", p.gamma);
        set("eta", p.eta);
        set("kappa_a", p.kappa_a);
        set("kappa_b", p.kappa_b);
        set("kappa_i", p.kappa_i);
        set("d_min", p.d_min);
        set("c_b", p.c_b);
        set("rooftop_tolerance", p.rooftop_tolerance);
        set_int("grid_x", p.grid.points_x, 1);
        set_int("grid_y", p.grid.points_y, 1);
        set("margin", p.grid.margin);
        set("learning_rate", p.learning_rate);
        set_int("iterations", p.max_iterations, 0);
        set_int("patience", p.patience, 1);
        set("beta_l", doc.sir.beta_l);
        set("xi", doc.sir.xi);
        set("temperature", doc.sir.temperature);
        set("epsilon", doc.sir.epsilon);
        set("mask_threshold", doc.sir.mask_threshold);
        if (h.has("attraction")) {
            const Node a = h["attraction"];
            const std::string s = a.string();
            if (s == "printed")
                p.attraction = AttractionForm::printed;
            else if (s == "shifted")
                p.attraction = AttractionForm::shifted;
            else
                a.fail("expected 'printed' or 'shifted'");
        }
    }

    if (n.has("num_abs")) {
        const Node v = n["num_abs"];
        doc.num_abs = v.small_int();
        if (doc.num_abs < 1) v.fail("must be at least 1");
    }
    if (n.has("seed")) doc.seed = n["seed"].unsigned_integer();
    return doc;
}

std::vector<Vec2> DeploymentDoc::positions() const {
    std::vector<Vec2> out;
    for (const auto& a : abs) out.push_back({a.x, a.y});
    return out;
}

OrientPowerParams DeploymentDoc::params() const {
    OrientPowerParams out;
    for (const auto& a : abs) out.push_back({deg_to_rad(a.azimuth_deg), deg_to_rad(a.tilt_deg), a.power_dbm});
    return out;
}

DeploymentDoc DeploymentDoc::from(std::span<const Vec2> positions, std::span<const AbsOrientation> params) {
    if (positions.size() != params.size()) throw InvalidArgumentError("one orientation per ABS position required");
    DeploymentDoc doc;
    for (std::size_t i = 0; i < positions.size(); ++i)
        doc.abs.push_back({static_cast<int>(i), positions[i].x, positions[i].y, rad_to_deg(params[i].azimuth),
                           rad_to_deg(params[i].tilt), params[i].power_dbm});
    return doc;
}

std::string to_json(const DeploymentDoc& doc) {
    json j = header("deployment");
    j["abs"] = json::array();
    for (const auto& a : doc.abs)
        j["abs"].push_back({{"id", a.id},
                            {"x", finite(a.x, "coordinate")},
                            {"y", finite(a.y, "coordinate")},
                            {"azimuth_deg", finite(a.azimuth_deg, "azimuth")},
                            {"tilt_deg", finite(a.tilt_deg, "tilt")},
                            {"power_dbm", finite(a.power_dbm, "power")}});
    return dump(j);
}

DeploymentDoc parse_deployment(const std::string& text) {
    const json root = parse_text(text);
    const Node n = open_document(root, "deployment");
    n.only({"schema_version", "kind", "abs"});
    // Bounds in degrees with slack for a radians round trip.
    const ParamBounds b;
    constexpr double slack = 1e-9;
    DeploymentDoc doc;
    std::set<int> ids;
    const Node list = n["abs"];
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Node a = list.item(i);
        a.only({"id", "x", "y", "azimuth_deg", "tilt_deg", "power_dbm"});
        DeployedAbs d;
        d.id = a["id"].small_int();
        if (!ids.insert(d.id).second) a["id"].fail("duplicate ABS id " + std::to_string(d.id));
        d.x = a["x"].number();
        d.y = a["y"].number();
        d.azimuth_deg = a["azimuth_deg"].number();
        d.tilt_deg = a["tilt_deg"].number();
        d.power_dbm = a["power_dbm"].number();
        if (d.azimuth_deg < rad_to_deg(b.azimuth_min) - slack || d.azimuth_deg > rad_to_deg(b.azimuth_max) + slack)
            a["azimuth_deg"].fail("azimuth outside [-360, 360] degrees");
        if (d.tilt_deg < rad_to_deg(b.tilt_min) - slack || d.tilt_deg > rad_to_deg(b.tilt_max) + slack)
            a["tilt_deg"].fail("tilt outside [180/7, 1080/7] degrees");
        doc.abs.push_back(d);
    }
    return doc;
}

TrajectoryDoc schedule_trajectory(const RecoverySchedule& schedule, const std::string& abs_id, double step_seconds) {
    TrajectoryDoc doc;
    doc.step_seconds = step_seconds;
    EntityTrajectory e{abs_id, "abs", {}};
    long step = schedule.start + 1;
    for (Vec2 p : schedule.reaction) e.points.push_back({step++, p.x, p.y});
    for (; step <= schedule.end; ++step) e.points.push_back({step, schedule.stationary.x, schedule.stationary.y});
    for (Vec2 p : schedule.return_path) e.points.push_back({step++, p.x, p.y});
    doc.entities.push_back(std::move(e));
    return doc;
}

std::string to_json(const TrajectoryDoc& doc) {
    json j = header("trajectory");
    j["step_seconds"] = finite(doc.step_seconds, "step duration");
    j["entities"] = json::array();
    for (const auto& e : doc.entities) {
        json pts = json::array();
        for (const auto& p : e.points)
            pts.push_back(json::array({p.step, finite(p.x, "coordinate"), finite(p.y, "coordinate")}));
        j["entities"].push_back({{"id", e.id}, {"type", e.type}, {"points", pts}});
    }
    return dump(j);
}

TrajectoryDoc parse_trajectory(const std::string& text) {
    const json root = parse_text(text);
    const Node n = open_document(root, "trajectory");
    n.only({"schema_version", "kind", "step_seconds", "entities"});
    TrajectoryDoc doc;
    doc.step_seconds = n["step_seconds"].number();
    if (!(doc.step_seconds > 0.0)) n["step_seconds"].fail("must be positive");
    const Node list = n["entities"];
    std::set<std::string> ids;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Node e = list.item(i);
        e.only({"id", "type", "points"});
        EntityTrajectory t;
        t.id = e["id"].string();
        if (!ids.insert(t.id).second) e["id"].fail("duplicate entity id '" + t.id + "'");
        t.type = e["type"].string();
        if (t.type != "abs" && t.type != "ue") e["type"].fail("expected 'abs' or 'ue'");
        const Node pts = e["points"];
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Node p = pts.item(k);
            if (p.size() != 3) p.fail("expected [step, x, y]");
            TrajectoryPoint tp{p.item(0).integer(), p.item(1).number(), p.item(2).number()};
            if (!t.points.empty() && tp.step <= t.points.back().step) p.item(0).fail("steps must be strictly increasing");
            t.points.push_back(tp);
        }
        doc.entities.push_back(std::move(t));
    }
    return doc;
}

std::string to_json(const DropReportDoc& doc) {
    json j = header("drop_report");
    j["detector"] = {{"t_min", finite(doc.detector.t_min, "threshold")},
                     {"c_min", doc.detector.c_min},
                     {"s_p", doc.detector.s_p}};
    j["events"] = json::array();
    for (const auto& e : doc.events)
        j["events"].push_back({{"start", e.start}, {"end", e.end}, {"duration", e.duration()}, {"middle", e.middle()}});
    return dump(j);
}

DropReportDoc parse_drop_report(const std::string& text) {
    const json root = parse_text(text);
    const Node n = open_document(root, "drop_report");
    n.only({"schema_version", "kind", "detector", "events"});
    DropReportDoc doc;
    const Node d = n["detector"];
    d.only({"t_min", "c_min", "s_p"});
    doc.detector.t_min = d["t_min"].number();
    doc.detector.c_min = d["c_min"].small_int();
    doc.detector.s_p = d["s_p"].small_int();
    if (!(doc.detector.t_min > 0.0)) d["t_min"].fail("must be positive");
    if (doc.detector.c_min < 1) d["c_min"].fail("must be at least 1");
    if (doc.detector.s_p < 0) d["s_p"].fail("must be non-negative");
    const Node list = n["events"];
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Node e = list.item(i);
        e.only({"start", "end", "duration", "middle"});
        DropEvent ev{e["start"].small_int(), e["end"].small_int()};
        if (ev.start < 0 || ev.end < ev.start) e.fail("expected 0 <= start <= end");
        if (!doc.events.empty() && ev.start <= doc.events.back().end) e["start"].fail("events must be ordered and disjoint");
        if (e.has("duration") && e["duration"].small_int() != ev.duration()) e["duration"].fail("does not equal end - start");
        if (e.has("middle") && e["middle"].small_int() != ev.middle())
            e["middle"].fail("does not equal floor((start + end) / 2)");
        doc.events.push_back(ev);
    }
    return doc;
}

std::string to_json(const RecoverySchedule& s) {
    json j = header("recovery_schedule");
    j["start"] = s.start;
    j["middle"] = s.middle;
    j["end"] = s.end;
    j["reaction"] = json::array();
    for (Vec2 p : s.reaction) j["reaction"].push_back(point(p));
    j["stationary"] = point(s.stationary);
    j["return"] = json::array();
    for (Vec2 p : s.return_path) j["return"].push_back(point(p));
    return dump(j);
}

RecoverySchedule parse_recovery_schedule(const std::string& text) {
    const json root = parse_text(text);
    const Node n = open_document(root, "recovery_schedule");
    n.only({"schema_version", "kind", "start", "middle", "end", "reaction", "stationary", "return"});
    RecoverySchedule s;
    s.start = n["start"].small_int();
    s.end = n["end"].small_int();
    s.middle = n["middle"].small_int();
    if (s.end - s.start < 2) n["end"].fail("drop must last at least two steps");
    if (s.middle != (s.start + s.end) / 2) n["middle"].fail("does not equal floor((start + end) / 2)");
    const Node reaction = n["reaction"];
    for (std::size_t i = 0; i < reaction.size(); ++i) s.reaction.push_back(reaction.item(i).point());
    if (static_cast<int>(s.reaction.size()) != (s.end - s.start) / 2)
        reaction.fail("expected floor((end - start) / 2) points");
    s.stationary = n["stationary"].point();
    const Node ret = n["return"];
    for (std::size_t i = 0; i < ret.size(); ++i) s.return_path.push_back(ret.item(i).point());
    if (!std::equal(s.return_path.begin(), s.return_path.end(), s.reaction.rbegin(), s.reaction.rend()))
        ret.fail("must be the reaction points in reverse order");
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgumentError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgumentError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw InvalidArgumentError("failed writing '" + path + "'");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw InvalidArgumentError("CSV row width differs from the header");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

}  // namespace absdeploy
