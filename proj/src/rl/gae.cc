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

#include "einu/rl/gae.h"

#include "einu/common/error.h"

namespace einu::rl {

GaeResult ComputeGae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                     double bootstrap_value, double gamma, double lambda,
                     const std::vector<std::uint8_t>& dones) {
  const Eigen::Index n = rewards.size();
  if (values.size() != n || (!dones.empty() && static_cast<Eigen::Index>(dones.size()) != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "gae inputs must be aligned");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0 && lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "gae needs gamma, lambda in [0, 1]");
  }
  GaeResult out;
  out.advantages.resize(n);
  double next_value = bootstrap_value;
  double next_advantage = 0.0;
  for (Eigen::Index t = n - 1; t >= 0; --t) {
    const double live = (!dones.empty() && dones[t]) ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * next_value * live - values[t];
    next_advantage = delta + gamma * lambda * live * next_advantage;
    out.advantages[t] = next_advantage;
    next_value = values[t];
  }
  out.returns = out.advantages + values;
  return out;
}

}  // namespace einu::rl
