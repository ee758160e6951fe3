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

#include "absdeploy/optim.hpp"

#include <cmath>

#include "absdeploy/errors.hpp"

namespace absdeploy {

void Adam::step(std::span<double> params, std::span<const double> grads, double lr) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw InvalidArgumentError("Adam: parameter/gradient size mismatch");
    ++t_;
    const double c1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = opt_.beta1 * m_[i] + (1.0 - opt_.beta1) * grads[i];
        v_[i] = opt_.beta2 * v_[i] + (1.0 - opt_.beta2) * grads[i] * grads[i];
        const double mhat = m_[i] / c1;
        const double vhat = v_[i] / c2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + opt_.eps);
    }
}

void rmsprop_step(std::span<double> params, std::span<const double> grads, RmsPropState& state, double lr) {
    if (params.size() != grads.size()) throw InvalidArgumentError("RMSProp: parameter/gradient size mismatch");
    if (state.mean_square.empty()) state.mean_square.assign(params.size(), 0.0);
    if (state.mean_square.size() != params.size()) throw InvalidArgumentError("RMSProp: state size mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto& v = state.mean_square[i];
        v = state.rho * v + (1.0 - state.rho) * grads[i] * grads[i];
        params[i] -= lr * grads[i] / (std::sqrt(v) + state.eps);
    }
}

}  // namespace absdeploy
