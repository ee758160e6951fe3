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

#include <cstddef>
#include <span>
#include <vector>

namespace absdeploy {

// Adam with bias correction over a flat parameter vector.
class Adam {
public:
    struct Options {
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
    };

    explicit Adam(std::size_t size) : Adam(size, Options{}) {}
    Adam(std::size_t size, Options options) : opt_(options), m_(size, 0.0), v_(size, 0.0) {}

    void step(std::span<double> params, std::span<const double> grads, double lr);
    long steps() const { return t_; }

private:
    Options opt_;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

struct RmsPropState {
    std::vector<double> mean_square;
    double rho = 0.9;
    double eps = 1e-8;
    friend bool operator==(const RmsPropState&, const RmsPropState&) = default;
};

/// v <- rho v + (1 - rho) g^2 ; p <- p - lr g / (sqrt(v) + eps).
/// An empty state is sized on first use.
void rmsprop_step(std::span<double> params, std::span<const double> grads, RmsPropState& state, double lr);

}  // namespace absdeploy
