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

#ifndef EINU_EMOTION_LAYERS_H_
#define EINU_EMOTION_LAYERS_H_

#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace einu::emotion {

using ConstMatMap = Eigen::Map<const Eigen::MatrixXd>;
using MatMap = Eigen::Map<Eigen::MatrixXd>;

struct TensorSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  Eigen::Index offset = 0;
};

// Named matrices packed into one flat vector, in insertion order.
class ParamLayout {
 public:
  int Add(std::string name, int rows, int cols);

  Eigen::Index size() const { return size_; }
  const std::vector<TensorSpec>& tensors() const { return tensors_; }

  ConstMatMap View(const Eigen::VectorXd& flat, int index) const;
  MatMap View(Eigen::VectorXd& flat, int index) const;

 private:
  std::vector<TensorSpec> tensors_;
  Eigen::Index size_ = 0;
};

// Columns are samples throughout.
Eigen::MatrixXd Dense(const ConstMatMap& w, const ConstMatMap& b, const Eigen::MatrixXd& x);
// Adds dL/dW and dL/db; returns dL/dx.
Eigen::MatrixXd DenseBackward(const ConstMatMap& w, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& grad_out, MatMap dw, MatMap db);

Eigen::MatrixXd Relu(const Eigen::MatrixXd& z);
// grad * 1[z > 0]
Eigen::MatrixXd ReluBackward(const Eigen::MatrixXd& z, const Eigen::MatrixXd& grad);

// Column-wise, max-subtracted.
Eigen::MatrixXd Softmax(const Eigen::MatrixXd& logits);
// Mean over columns of -log p[label]; also fills dL/dlogits = (p - onehot) / B.
double SoftmaxCrossEntropy(const Eigen::MatrixXd& logits, const std::vector<int>& labels,
                           Eigen::MatrixXd* grad_logits);

// Inverted dropout mask (entries 0 or 1 / (1 - rate)).
Eigen::MatrixXd DropoutMask(int rows, int cols, double rate, std::mt19937_64& rng);

// LSTM with gates stacked as i, f, g, o:
//   z = W x + U h_prev + b,  i, f, o = sigmoid,  g = tanh,
//   c = f * c_prev + i * g,  h = o * tanh(c).
// W is 4H x in, U is 4H x H, b is 4H x 1.
struct LstmTrace {
  std::vector<Eigen::MatrixXd> x, h_prev, c_prev, i, f, g, o, tanh_c;
};

// Zero initial state; returns h_t for every step.
std::vector<Eigen::MatrixXd> LstmForward(const ConstMatMap& w, const ConstMatMap& u,
                                         const ConstMatMap& b,
                                         const std::vector<Eigen::MatrixXd>& xs,
                                         LstmTrace* trace);

// Backpropagation through time given dL/dh_t for every step (zero where the
// output is unused). Adds parameter gradients; returns dL/dx_t.
std::vector<Eigen::MatrixXd> LstmBackward(const ConstMatMap& w, const ConstMatMap& u,
                                          const LstmTrace& trace,
                                          const std::vector<Eigen::MatrixXd>& grad_h, MatMap dw,
                                          MatMap du, MatMap db);

// Glorot-uniform fill.
void GlorotFill(MatMap m, int fan_in, int fan_out, std::mt19937_64& rng);

}  // namespace einu::emotion

#endif  // EINU_EMOTION_LAYERS_H_
