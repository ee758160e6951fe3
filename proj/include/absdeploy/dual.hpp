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
#include <cmath>

namespace absdeploy {

// Forward-mode dual number with N tangent directions. Only the operations
// needed by the link-gain model are provided.
template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
    static Dual variable(double value, int k) {
        Dual x(value);
        x.d[static_cast<std::size_t>(k)] = 1.0;
        return x;
    }

    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int k = 0; k < N; ++k) d[k] += o.d[k];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int k = 0; k < N; ++k) d[k] -= o.d[k];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (int k = 0; k < N; ++k) d[k] = d[k] * o.v + v * o.d[k];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const double inv = 1.0 / o.v;
        for (int k = 0; k < N; ++k) d[k] = (d[k] - v * inv * o.d[k]) * inv;
        v *= inv;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a) {
        a.v = -a.v;
        for (auto& x : a.d) x = -x;
        return a;
    }
    friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
};

namespace detail {
template <int N>
Dual<N> chain(const Dual<N>& x, double value, double deriv) {
    Dual<N> r(value);
    for (int k = 0; k < N; ++k) r.d[k] = deriv * x.d[k];
    return r;
}
}  // namespace detail

template <int N>
Dual<N> sqrt(const Dual<N>& x) {
    const double s = std::sqrt(x.v);
    return detail::chain(x, s, s > 0.0 ? 0.5 / s : 0.0);
}
template <int N>
Dual<N> exp(const Dual<N>& x) {
    const double e = std::exp(x.v);
    return detail::chain(x, e, e);
}
template <int N>
Dual<N> log(const Dual<N>& x) {
    return detail::chain(x, std::log(x.v), 1.0 / x.v);
}
template <int N>
Dual<N> sin(const Dual<N>& x) {
    return detail::chain(x, std::sin(x.v), std::cos(x.v));
}
template <int N>
Dual<N> cos(const Dual<N>& x) {
    return detail::chain(x, std::cos(x.v), -std::sin(x.v));
}
template <int N>
Dual<N> atan2(const Dual<N>& y, const Dual<N>& x) {
    const double r2 = x.v * x.v + y.v * y.v;
    Dual<N> r(std::atan2(y.v, x.v));
    if (r2 > 0.0)
        for (int k = 0; k < N; ++k) r.d[k] = (x.v * y.d[k] - y.v * x.d[k]) / r2;
    return r;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
    return x.v;
}

}  // namespace absdeploy
