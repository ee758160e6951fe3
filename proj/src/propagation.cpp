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

#include "absdeploy/propagation.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "absdeploy/dual.hpp"
#include "absdeploy/errors.hpp"

namespace absdeploy {

std::string to_string(PatternKind k) {
    switch (k) {
        case PatternKind::directional_3gpp: return "directional-3gpp";
        case PatternKind::halfwave_dipole: return "halfwave-dipole";
        case PatternKind::isotropic: return "isotropic";
    }
    return "unknown";
}

PatternKind pattern_from_string(const std::string& s) {
    if (s == "directional-3gpp") return PatternKind::directional_3gpp;
    if (s == "halfwave-dipole") return PatternKind::halfwave_dipole;
    if (s == "isotropic") return PatternKind::isotropic;
    throw InvalidArgumentError("unknown antenna pattern '" + s + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPowerBeamwidth = 65.0 * kPi / 180.0;
constexpr double kSideLobeLimitDb = 30.0;
const double kDipolePeak = db_to_linear(2.15);

template <class T>
T smooth_min(const T& a, const T& b, double k) {
    using std::exp;
    using std::log;
    if (value_of(a) <= value_of(b)) return a - log(T(1.0) + exp((a - b) * T(k))) / T(k);
    return b - log(T(1.0) + exp((b - a) * T(k))) / T(k);
}

template <class T>
T hard_min(const T& a, const T& b) {
    return value_of(a) <= value_of(b) ? a : b;
}

// Attenuation below boresight gain, in dB (non-negative).
template <class T>
T directional_attenuation_db(const T& azimuth_off, const T& zenith_off, bool smooth, double k) {
    const T ev = (zenith_off - T(kPi / 2.0)) / T(kHalfPowerBeamwidth);
    const T az = azimuth_off / T(kHalfPowerBeamwidth);
    const T av = T(12.0) * ev * ev;
    const T ah = T(12.0) * az * az;
    const T cap(kSideLobeLimitDb);
    if (smooth) return smooth_min(smooth_min(av, cap, k) + smooth_min(ah, cap, k), cap, k);
    return hard_min(hard_min(av, cap) + hard_min(ah, cap), cap);
}

template <class T>
T db_to_lin(const T& db) {
    using std::exp;
    return exp(db * T(std::numbers::ln10 / 10.0));
}

// Local (azimuth, zenith) of direction (dx, dy, dz) in the frame of a panel
// rotated by Rz(az) Ry(tilt).
template <class T>
void local_angles(const T& dx, const T& dy, const T& dz, const T& az, const T& tilt, T& azimuth_off, T& zenith_off) {
    using std::atan2;
    using std::cos;
    using std::sin;
    using std::sqrt;
    const T ca = cos(az), sa = sin(az), ct = cos(tilt), st = sin(tilt);
    const T u = ca * dx + sa * dy;
    const T v = ca * dy - sa * dx;
    const T lx = ct * u - st * dz;
    const T lz = st * u + ct * dz;
    azimuth_off = atan2(v, lx);
    zenith_off = atan2(sqrt(lx * lx + v * v), lz);
}

template <class T>
T dipole_gain(const T& horizontal, const T& vertical) {
    using std::cos;
    using std::sqrt;
    if (value_of(horizontal) <= 1e-12 * std::abs(value_of(vertical))) return T(0.0);
    const T r = sqrt(horizontal * horizontal + vertical * vertical);
    const T c = vertical / r;
    const T s = horizontal / r;
    const T f = cos(T(kPi / 2.0) * c) / s;
    return T(kDipolePeak) * f * f;
}

// Gain of an antenna with the given pattern for a departure/arrival direction
// d expressed in the global frame.
template <class T>
T pattern_gain(PatternKind kind, const T& dx, const T& dy, const T& dz, const T& az, const T& tilt, double gmax_dbi,
               bool smooth, double sharpness) {
    using std::sqrt;
    switch (kind) {
        case PatternKind::isotropic: return T(1.0);
        case PatternKind::halfwave_dipole: return dipole_gain(sqrt(dx * dx + dy * dy), dz);
        case PatternKind::directional_3gpp: {
            T phi, theta;
            local_angles(dx, dy, dz, az, tilt, phi, theta);
            return db_to_lin(T(gmax_dbi) - directional_attenuation_db(phi, theta, smooth, sharpness));
        }
    }
    return T(1.0);
}

template <class T>
T sigmoid(const T& x) {
    using std::exp;
    if (value_of(x) >= 0.0) return T(1.0) / (T(1.0) + exp(-x));
    const T e = exp(x);
    return e / (T(1.0) + e);
}

template <class T>
T occlusion(const T& clearance, double softness, double floor) {
    if (!std::isfinite(value_of(clearance))) return T(1.0);
    return T(floor) + T(1.0 - floor) * sigmoid(clearance / T(softness));
}

// Full link gain. (x, y, az, tilt) are the transmitter's free parameters.
template <class T>
T link_gain_impl(const T& x, const T& y, const T& az, const T& tilt, double tx_z, const AntennaConfig& ant, Vec3 rx,
                 const T& clearance, const PropagationModel& m, bool smooth) {
    using std::sqrt;
    const T dx = T(rx.x) - x;
    const T dy = T(rx.y) - y;
    const T dz(rx.z - tx_z);
    const T d = sqrt(dx * dx + dy * dy + dz * dz);
    if (!(value_of(d) > 0.0)) throw DomainError("link gain: transmitter and receiver coincide");
    const double lambda = speed_of_light / m.frequency_hz;
    const T amp = T(lambda / (4.0 * kPi)) / d;
    const T fs = amp * amp;
    const T g_tx = pattern_gain(ant.pattern, dx, dy, dz, az, tilt, ant.boresight_gain_dbi, smooth, m.pattern_sharpness);
    // Receiver antenna sits upright with zero mechanical azimuth and tilt.
    const T zero(0.0);
    const T g_rx = pattern_gain(m.rx_pattern, -dx, -dy, -dz, zero, zero, 8.0, smooth, m.pattern_sharpness);
    return fs * g_tx * g_rx * occlusion(clearance, m.occlusion_softness, m.occlusion_floor);
}

}  // namespace

double element_gain_directional(double azimuth_off, double zenith_off, double boresight_gain_dbi, bool smooth,
                                double sharpness) {
    return db_to_linear(boresight_gain_dbi - directional_attenuation_db(azimuth_off, zenith_off, smooth, sharpness));
}

double element_gain_dipole(double zenith) {
    return dipole_gain(std::abs(std::sin(zenith)), std::cos(zenith));
}

double free_space_gain(double distance, double frequency_hz) {
    if (!(distance > 0.0)) throw DomainError("free-space gain requires a positive distance");
    const double lambda = speed_of_light / frequency_hz;
    const double a = lambda / (4.0 * kPi * distance);
    return a * a;
}

double occlusion_factor(double clearance, double softness, double floor) {
    if (!(softness > 0.0)) throw InvalidArgumentError("occlusion softness must be positive");
    return occlusion(clearance, softness, floor);
}

double link_gain(const TxConfig& tx, Vec3 rx, const Scene& scene, const PropagationModel& model) {
    const auto c = los_clearance_with_gradient(tx.position, rx, scene.buildings(), model.clearance_cutoff);
    return link_gain_impl(tx.position.x, tx.position.y, tx.antenna.azimuth, tx.antenna.tilt, tx.position.z, tx.antenna,
                          rx, c.value, model, model.smooth_pattern);
}

CoverageGrid CoverageGrid::covering(const Scene& scene, double cell_size) {
    if (!(cell_size > 0.0)) throw InvalidArgumentError("cell size must be positive");
    const Vec2 ext = scene.extent_max() - scene.extent_min();
    CoverageGrid g;
    g.origin = scene.extent_min();
    g.cell_size = cell_size;
    g.nx = std::max(1, static_cast<int>(std::ceil(ext.x / cell_size - 1e-9)));
    g.ny = std::max(1, static_cast<int>(std::ceil(ext.y / cell_size - 1e-9)));
    return g;
}

namespace {

CoverageMap make_empty(const CoverageGrid& grid, std::size_t ntx, const PropagationModel& model) {
    if (!(grid.cell_size > 0.0) || grid.nx < 1 || grid.ny < 1) throw InvalidArgumentError("invalid coverage grid");
    CoverageMap map;
    map.grid = grid;
    map.frequency_hz = model.frequency_hz;
    map.num_tx = static_cast<int>(ntx);
    map.gains.assign(ntx * grid.cells(), 0.0);
    return map;
}

}  // namespace

CoverageMap compute_coverage_map(const Scene& scene, std::span<const TxConfig> txs, const CoverageGrid& grid,
                                 const PropagationModel& model) {
    auto map = make_empty(grid, txs.size(), model);
    for (int i = 0; i < map.num_tx; ++i) {
        const auto& tx = txs[static_cast<std::size_t>(i)];
        for (int ix = 0; ix < grid.nx; ++ix) {
            for (int iy = 0; iy < grid.ny; ++iy) {
                const Vec2 c = grid.cell_center(ix, iy);
                map.gains[map.index(i, ix, iy)] = link_gain(tx, {c.x, c.y, model.rx_height}, scene, model);
            }
        }
    }
    return map;
}

CoverageMap compute_coverage_map(const Scene& scene, std::span<const TxConfig> txs, const CoverageGrid& grid,
                                 const PropagationModel& model, GainJacobian& jacobian) {
    using D = Dual<4>;
    auto map = make_empty(grid, txs.size(), model);
    jacobian.assign(map.gains.size(), {0.0, 0.0, 0.0, 0.0});
    for (int i = 0; i < map.num_tx; ++i) {
        const auto& tx = txs[static_cast<std::size_t>(i)];
        const D x = D::variable(tx.position.x, 0);
        const D y = D::variable(tx.position.y, 1);
        const D az = D::variable(tx.antenna.azimuth, 2);
        const D tilt = D::variable(tx.antenna.tilt, 3);
        for (int ix = 0; ix < grid.nx; ++ix) {
            for (int iy = 0; iy < grid.ny; ++iy) {
                const Vec2 c = grid.cell_center(ix, iy);
                const Vec3 rx{c.x, c.y, model.rx_height};
                const auto cl =
                    los_clearance_with_gradient(tx.position, rx, scene.buildings(), model.clearance_cutoff);
                D clearance(cl.value);
                clearance.d[0] = cl.grad_start.x;
                clearance.d[1] = cl.grad_start.y;
                const D g = link_gain_impl(x, y, az, tilt, tx.position.z, tx.antenna, rx, clearance, model, true);
                const auto k = map.index(i, ix, iy);
                map.gains[k] = g.v;
                jacobian[k] = g.d;
            }
        }
    }
    return map;
}

std::vector<double> rss(const CoverageMap& map, std::span<const double> p_tx_watts) {
    if (p_tx_watts.size() != static_cast<std::size_t>(map.num_tx))
        throw InvalidArgumentError("rss: one transmit power per ABS required");
    std::vector<double> out(map.gains.size());
    const auto cells = map.grid.cells();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p_tx_watts[k / cells] * map.gains[k];
    return out;
}

double default_mask_threshold(const Scene& scene, const PropagationModel& model) {
    return model.occlusion_floor * free_space_gain(scene.diagonal(), model.frequency_hz);
}

namespace {

constexpr char kMagic[8] = {'A', 'B', 'S', 'C', 'M', 'A', 'P', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

template <class U>
void put_le(std::ostream& os, U value) {
    static_assert(std::is_trivially_copyable_v<U>);
    unsigned char bytes[sizeof(U)];
    std::memcpy(bytes, &value, sizeof(U));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(U));
    os.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <class U>
U get_le(std::istream& is, const char* field) {
    unsigned char bytes[sizeof(U)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(U)))
        throw ParseError(field, "coverage map truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(U));
    U value;
    std::memcpy(&value, bytes, sizeof(U));
    return value;
}

}  // namespace

void write_coverage_map(std::ostream& os, const CoverageMap& map) {
    if (map.gains.size() != static_cast<std::size_t>(map.num_tx) * map.grid.cells())
        throw InvalidArgumentError("coverage map dimensions do not match its gain buffer");
    os.write(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(os, kFormatVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.num_tx));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.grid.nx));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(map.grid.ny));
    put_le<double>(os, map.grid.origin.x);
    put_le<double>(os, map.grid.origin.y);
    put_le<double>(os, map.grid.cell_size);
    put_le<double>(os, map.frequency_hz);
    for (double g : map.gains) put_le<double>(os, g);
}

CoverageMap read_coverage_map(std::istream& is) {
    char magic[8];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ParseError("magic", "not a coverage map file");
    const auto version = get_le<std::uint32_t>(is, "version");
    if (version != kFormatVersion)
        throw ParseError("version", "unsupported coverage map version " + std::to_string(version));
    CoverageMap map;
    map.num_tx = static_cast<int>(get_le<std::uint32_t>(is, "N"));
    map.grid.nx = static_cast<int>(get_le<std::uint32_t>(is, "C_x"));
    map.grid.ny = static_cast<int>(get_le<std::uint32_t>(is, "C_y"));
    map.grid.origin.x = get_le<double>(is, "origin_x");
    map.grid.origin.y = get_le<double>(is, "origin_y");
    map.grid.cell_size = get_le<double>(is, "cell_size");
    map.frequency_hz = get_le<double>(is, "f_c");
    if (map.num_tx < 1 || map.grid.nx < 1 || map.grid.ny < 1 || !(map.grid.cell_size > 0.0))
        throw ParseError("header", "invalid coverage map dimensions");
    const std::size_t count = static_cast<std::size_t>(map.num_tx) * map.grid.cells();
    map.gains.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        map.gains[k] = get_le<double>(is, "gains");
        if (!(map.gains[k] >= 0.0) || !std::isfinite(map.gains[k]))
            throw ParseError("gains[" + std::to_string(k) + "]", "gain must be finite and non-negative");
    }
    if (is.peek() != std::char_traits<char>::eof())
        throw ParseError("gains", "trailing data after declared dimensions");
    map.differentiable = false;
    return map;
}

void save_coverage_map(const std::string& path, const CoverageMap& map) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgumentError("cannot open '" + path + "' for writing");
    write_coverage_map(os, map);
}

CoverageMap load_coverage_map(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError(path, "cannot open coverage map");
    return read_coverage_map(is);
}

}  // namespace absdeploy
