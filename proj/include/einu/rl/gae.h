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

#ifndef EINU_RL_GAE_H_
#define EINU_RL_GAE_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace einu::rl {

struct GaeResult {
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;  // advantages + values
};

// Generalized advantage estimation over one stream of transitions.
// values[t] = V(s_t); bootstrap_value = V(s_T) after the last transition.
// dones[t] != 0 ends an episode after transition t (no bootstrapping across
// it). An empty dones vector means a single episode.
GaeResult ComputeGae(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                     double bootstrap_value, double gamma, double lambda,
                     const std::vector<std::uint8_t>& dones = {});

}  // namespace einu::rl

#endif  // EINU_RL_GAE_H_
