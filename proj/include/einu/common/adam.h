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

#ifndef EINU_COMMON_ADAM_H_
#define EINU_COMMON_ADAM_H_

#include <Eigen/Core>

namespace einu {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adaptive-moment optimizer over a flat parameter vector.
class Adam {
 public:
  Adam(Eigen::Index size, AdamConfig config);

  // Applies one descent step in place. A zero learning rate leaves the
  // parameters bit-identical.
  void Step(Eigen::VectorXd& params, const Eigen::VectorXd& gradient);

  const AdamConfig& config() const { return config_; }
  long steps() const { return steps_; }

 private:
  AdamConfig config_;
  Eigen::VectorXd first_moment_;
  Eigen::VectorXd second_moment_;
  long steps_ = 0;
};

}  // namespace einu

#endif  // EINU_COMMON_ADAM_H_
