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

#ifndef EINU_TESTS_ORACLE_GRADIENT_ORACLE_H_
#define EINU_TESTS_ORACLE_GRADIENT_ORACLE_H_

#include <algorithm>
#include <functional>

#include <Eigen/Core>

namespace einu::oracle {

// Central differences of f at theta.
inline Eigen::VectorXd FiniteDifferenceGradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                                const Eigen::VectorXd& theta, double h = 1e-6) {
  Eigen::VectorXd g(theta.size());
  Eigen::VectorXd t = theta;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    t[k] = theta[k] + h;
    const double up = f(t);
    t[k] = theta[k] - h;
    const double down = f(t);
    t[k] = theta[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

inline double RelativeError(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

}  // namespace einu::oracle

#endif  // EINU_TESTS_ORACLE_GRADIENT_ORACLE_H_
