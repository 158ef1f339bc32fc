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

#include "einu/emotion/layers.h"

#include <cmath>
#include <utility>

#include "einu/common/error.h"

namespace einu::emotion {

using Eigen::MatrixXd;

int ParamLayout::Add(std::string name, int rows, int cols) {
  tensors_.push_back({std::move(name), rows, cols, size_});
  size_ += static_cast<Eigen::Index>(rows) * cols;
  return static_cast<int>(tensors_.size()) - 1;
}

ConstMatMap ParamLayout::View(const Eigen::VectorXd& flat, int index) const {
  const TensorSpec& t = tensors_[index];
  return ConstMatMap(flat.data() + t.offset, t.rows, t.cols);
}

MatMap ParamLayout::View(Eigen::VectorXd& flat, int index) const {
  const TensorSpec& t = tensors_[index];
  return MatMap(flat.data() + t.offset, t.rows, t.cols);
}

MatrixXd Dense(const ConstMatMap& w, const ConstMatMap& b, const MatrixXd& x) {
  MatrixXd z = w * x;
  z.colwise() += b.col(0);
  return z;
}

MatrixXd DenseBackward(const ConstMatMap& w, const MatrixXd& x, const MatrixXd& grad_out,
                       MatMap dw, MatMap db) {
  dw.noalias() += grad_out * x.transpose();
  db.col(0) += grad_out.rowwise().sum();
  return w.transpose() * grad_out;
}

MatrixXd Relu(const MatrixXd& z) { return z.cwiseMax(0.0); }

MatrixXd ReluBackward(const MatrixXd& z, const MatrixXd& grad) {
  return (z.array() > 0.0).select(grad, 0.0);
}

MatrixXd Softmax(const MatrixXd& logits) {
  MatrixXd p = logits;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    p.col(j).array() -= p.col(j).maxCoeff();
    p.col(j) = p.col(j).array().exp();
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

double SoftmaxCrossEntropy(const MatrixXd& logits, const std::vector<int>& labels,
                           MatrixXd* grad_logits) {
  if (static_cast<Eigen::Index>(labels.size()) != logits.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "one label per sample");
  }
  const MatrixXd p = Softmax(logits);
  const double inv_b = 1.0 / static_cast<double>(labels.size());
  double loss = 0.0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0 || labels[j] >= logits.rows()) {
      throw Error(ErrorCode::kInvalidParams, "label " + std::to_string(labels[j]) + " out of range");
    }
    // log-sum-exp form stays finite when p underflows.
    const double m = logits.col(static_cast<Eigen::Index>(j)).maxCoeff();
    const double lse =
        m + std::log((logits.col(static_cast<Eigen::Index>(j)).array() - m).exp().sum());
    loss += (lse - logits(labels[j], static_cast<Eigen::Index>(j))) * inv_b;
  }
  if (grad_logits) {
    *grad_logits = p * inv_b;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      (*grad_logits)(labels[j], static_cast<Eigen::Index>(j)) -= inv_b;
    }
  }
  return loss;
}

MatrixXd DropoutMask(int rows, int cols, double rate, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(1.0 - rate);
  const double scale = 1.0 / (1.0 - rate);
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = keep(rng) ? scale : 0.0;
  }
  return m;
}

namespace {

MatrixXd Sigmoid(const MatrixXd& z) { return (1.0 / (1.0 + (-z.array()).exp())).matrix(); }

}  // namespace

std::vector<MatrixXd> LstmForward(const ConstMatMap& w, const ConstMatMap& u, const ConstMatMap& b,
                                  const std::vector<MatrixXd>& xs, LstmTrace* trace) {
  const Eigen::Index h = u.cols();
  if (xs.empty()) throw Error(ErrorCode::kInvalidParams, "empty sequence");
  const Eigen::Index batch = xs[0].cols();
  MatrixXd hp = MatrixXd::Zero(h, batch);
  MatrixXd cp = MatrixXd::Zero(h, batch);
  std::vector<MatrixXd> hs;
  hs.reserve(xs.size());
  if (trace) *trace = {};
  for (const MatrixXd& x : xs) {
    MatrixXd z = w * x + u * hp;
    z.colwise() += b.col(0);
    MatrixXd i = Sigmoid(z.topRows(h));
    MatrixXd f = Sigmoid(z.middleRows(h, h));
    MatrixXd g = z.middleRows(2 * h, h).array().tanh().matrix();
    MatrixXd o = Sigmoid(z.bottomRows(h));
    MatrixXd c = (f.array() * cp.array() + i.array() * g.array()).matrix();
    MatrixXd tc = c.array().tanh().matrix();
    MatrixXd hn = (o.array() * tc.array()).matrix();
    if (trace) {
      trace->x.push_back(x);
      trace->h_prev.push_back(hp);
      trace->c_prev.push_back(cp);
      trace->i.push_back(std::move(i));
      trace->f.push_back(std::move(f));
      trace->g.push_back(std::move(g));
      trace->o.push_back(std::move(o));
      trace->tanh_c.push_back(tc);
    }
    hs.push_back(hn);
    hp = std::move(hn);
    cp = std::move(c);
  }
  return hs;
}

std::vector<MatrixXd> LstmBackward(const ConstMatMap& w, const ConstMatMap& u,
                                   const LstmTrace& trace, const std::vector<MatrixXd>& grad_h,
                                   MatMap dw, MatMap du, MatMap db) {
  const std::size_t steps = trace.x.size();
  if (grad_h.size() != steps) throw Error(ErrorCode::kDimensionMismatch, "one dh per step");
  const Eigen::Index h = u.cols();
  const Eigen::Index batch = trace.x[0].cols();
  std::vector<MatrixXd> dx(steps);
  MatrixXd dh_next = MatrixXd::Zero(h, batch);
  MatrixXd dc_next = MatrixXd::Zero(h, batch);
  MatrixXd dz(4 * h, batch);
  for (std::size_t k = steps; k-- > 0;) {
    const auto i = trace.i[k].array();
    const auto f = trace.f[k].array();
    const auto g = trace.g[k].array();
    const auto o = trace.o[k].array();
    const auto tc = trace.tanh_c[k].array();
    const Eigen::ArrayXXd dh = (grad_h[k] + dh_next).array();
    const Eigen::ArrayXXd dc = dc_next.array() + dh * o * (1.0 - tc * tc);
    dz.topRows(h) = (dc * g * i * (1.0 - i)).matrix();
    dz.middleRows(h, h) = (dc * trace.c_prev[k].array() * f * (1.0 - f)).matrix();
    dz.middleRows(2 * h, h) = (dc * i * (1.0 - g * g)).matrix();
    dz.bottomRows(h) = (dh * tc * o * (1.0 - o)).matrix();
    dw.noalias() += dz * trace.x[k].transpose();
    du.noalias() += dz * trace.h_prev[k].transpose();
    db.col(0) += dz.rowwise().sum();
    dx[k] = w.transpose() * dz;
    dh_next = u.transpose() * dz;
    dc_next = (dc * f).matrix();
  }
  return dx;
}

void GlorotFill(MatMap m, int fan_in, int fan_out, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
}

}  // namespace einu::emotion
