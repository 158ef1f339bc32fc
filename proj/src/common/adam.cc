// Copyright 2026 The einu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "einu/common/adam.h"

#include <cassert>
#include <cmath>

namespace einu {

Adam::Adam(Eigen::Index size, AdamConfig config)
    : config_(config),
      first_moment_(Eigen::VectorXd::Zero(size)),
      second_moment_(Eigen::VectorXd::Zero(size)) {}

void Adam::Step(Eigen::VectorXd& params, const Eigen::VectorXd& gradient) {
  assert(params.size() == gradient.size());
  ++steps_;
  first_moment_ = config_.beta1 * first_moment_ + (1.0 - config_.beta1) * gradient;
  second_moment_ = config_.beta2 * second_moment_ +
                   (1.0 - config_.beta2) * gradient.cwiseProduct(gradient);
  if (config_.learning_rate == 0.0) return;
  const double bias1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
  const double bias2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
  const double step = config_.learning_rate / bias1;
  params.array() -= step * first_moment_.array() /
                    ((second_moment_.array() / bias2).sqrt() + config_.epsilon);
}

}  // namespace einu
