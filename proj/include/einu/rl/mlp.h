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

#ifndef EINU_RL_MLP_H_
#define EINU_RL_MLP_H_

#include <random>
#include <vector>

#include <Eigen/Core>

namespace einu::rl {

// Fully connected network with tanh hidden units and a linear output layer.
// Parameters live in one flat vector: for each layer, the weight matrix
// (out x in, column-major) followed by the bias.
class Mlp {
 public:
  struct Cache {
    std::vector<Eigen::MatrixXd> activations;  // input, hidden..., output
  };

  Mlp() = default;
  explicit Mlp(std::vector<int> sizes);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int num_layers() const { return static_cast<int>(sizes_.size()) - 1; }
  const std::vector<int>& sizes() const { return sizes_; }
  Eigen::Index num_params() const { return params_.size(); }

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  // Shapes in storage order: {out, in} for weights, {out} for biases.
  std::vector<std::vector<int>> LayerShapes() const;

  // Scaled uniform (Glorot) weights, zero biases. The last layer is further
  // multiplied by output_scale.
  void Initialize(std::mt19937_64& rng, double output_scale);

  // Columns of x are samples.
  Eigen::MatrixXd Forward(const Eigen::MatrixXd& x, Cache* cache = nullptr) const;

  // Adds dL/dparams to *grad given dL/doutput for the cached forward pass.
  void Backward(const Cache& cache, const Eigen::MatrixXd& grad_output,
                Eigen::VectorXd* grad) const;

  // dL/dinput for the cached forward pass.
  Eigen::MatrixXd InputGradient(const Cache& cache,
                                const Eigen::MatrixXd& grad_output) const;

 private:
  Eigen::Index WeightOffset(int layer) const { return offsets_[layer]; }

  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd params_;
};

}  // namespace einu::rl

#endif  // EINU_RL_MLP_H_
