// Copyright 2026 The zsact Authors.
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

#ifndef ZSACT_PCA_HPP_
#define ZSACT_PCA_HPP_

#include <cstddef>

#include <Eigen/Dense>

namespace zsact {

// Mean-centred linear projection onto the leading principal axes.
struct PcaTransform {
  Eigen::VectorXd mean;
  // output_dim x input_dim, orthonormal rows ordered by decreasing variance.
  Eigen::MatrixXd projection;
  // Variance captured by each row of `projection`.
  Eigen::VectorXd eigenvalues;

  std::size_t input_dim() const { return static_cast<std::size_t>(projection.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(projection.rows()); }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // Projects every row.
  Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;

  void validate() const;
};

// Fits on the rows of `data` (population covariance). Each axis is signed so
// that its largest-magnitude entry is positive.
PcaTransform fit_pca(const Eigen::MatrixXd& data, std::size_t output_dim);

}  // namespace zsact

#endif  // ZSACT_PCA_HPP_
