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

#include "einu/rl/mlp.h"

#include <cmath>
#include <utility>

#include "einu/common/error.h"

namespace einu::rl {

using Eigen::Index;
using Eigen::Map;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Mlp::Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) throw Error(ErrorCode::kInvalidParams, "mlp needs two sizes");
  Index total = 0;
  for (size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] <= 0 || sizes_[l + 1] <= 0) {
      throw Error(ErrorCode::kInvalidParams, "mlp layer sizes must be positive");
    }
    offsets_.push_back(total);
    total += static_cast<Index>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  params_ = VectorXd::Zero(total);
}

std::vector<std::vector<int>> Mlp::LayerShapes() const {
  std::vector<std::vector<int>> shapes;
  for (int l = 0; l < num_layers(); ++l) {
    shapes.push_back({sizes_[l + 1], sizes_[l]});
    shapes.push_back({sizes_[l + 1]});
  }
  return shapes;
}

void Mlp::Initialize(std::mt19937_64& rng, double output_scale) {
  params_.setZero();
  for (int l = 0; l < num_layers(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    double bound = std::sqrt(6.0 / (in + out));
    if (l == num_layers() - 1) bound *= output_scale;
    std::uniform_real_distribution<double> dist(-bound, bound);
    double* w = params_.data() + WeightOffset(l);
    for (Index i = 0; i < static_cast<Index>(in) * out; ++i) w[i] = dist(rng);
  }
}

MatrixXd Mlp::Forward(const MatrixXd& x, Cache* cache) const {
  if (x.rows() != input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mlp input has " + std::to_string(x.rows()) + " rows, expected " +
                    std::to_string(input_dim()));
  }
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.push_back(x);
  }
  MatrixXd a = x;
  for (int l = 0; l < num_layers(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    Map<const MatrixXd> w(params_.data() + WeightOffset(l), out, in);
    Map<const VectorXd> b(params_.data() + WeightOffset(l) + out * in, out);
    MatrixXd z = w * a;
    z.colwise() += b;
    if (l + 1 < num_layers()) z = z.array().tanh().matrix();
    a = std::move(z);
    if (cache != nullptr) cache->activations.push_back(a);
  }
  return a;
}

void Mlp::Backward(const Cache& cache, const MatrixXd& grad_output,
                   VectorXd* grad) const {
  MatrixXd delta = grad_output;
  for (int l = num_layers() - 1; l >= 0; --l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const MatrixXd& a_in = cache.activations[l];
    Map<MatrixXd> gw(grad->data() + WeightOffset(l), out, in);
    Map<VectorXd> gb(grad->data() + WeightOffset(l) + out * in, out);
    gw.noalias() += delta * a_in.transpose();
    gb += delta.rowwise().sum();
    if (l == 0) break;
    Map<const MatrixXd> w(params_.data() + WeightOffset(l), out, in);
    MatrixXd back = w.transpose() * delta;
    delta = (back.array() * (1.0 - a_in.array().square())).matrix();
  }
}

MatrixXd Mlp::InputGradient(const Cache& cache, const MatrixXd& grad_output) const {
  MatrixXd delta = grad_output;
  for (int l = num_layers() - 1; l >= 0; --l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    Map<const MatrixXd> w(params_.data() + WeightOffset(l), out, in);
    MatrixXd back = w.transpose() * delta;
    if (l == 0) return back;
    delta = (back.array() * (1.0 - cache.activations[l].array().square())).matrix();
  }
  return delta;
}

}  // namespace einu::rl
