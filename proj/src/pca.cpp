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

#include "zsact/pca.hpp"

#include <cmath>
#include <string>

#include "zsact/error.hpp"

namespace zsact {

Eigen::VectorXd PcaTransform::apply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dim()) {
    throw InputError("PCA input has dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(input_dim()));
  }
  return projection * (x - mean);
}

Eigen::MatrixXd PcaTransform::apply_rows(const Eigen::MatrixXd& rows) const {
  if (static_cast<std::size_t>(rows.cols()) != input_dim()) {
    throw InputError("PCA input has dimension " + std::to_string(rows.cols()) +
                     ", expected " + std::to_string(input_dim()));
  }
  return (rows.rowwise() - mean.transpose()) * projection.transpose();
}

void PcaTransform::validate() const {
  if (projection.rows() < 1 || projection.rows() > projection.cols() ||
      mean.size() != projection.cols() || eigenvalues.size() != projection.rows()) {
    throw InputError("PCA parameter shapes disagree");
  }
  if (!projection.allFinite() || !mean.allFinite()) {
    throw InputError("PCA parameters must be finite");
  }
  const Eigen::MatrixXd gram = projection * projection.transpose();
  const auto eye = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > 1e-8) {
    throw InputError("PCA projection rows are not orthonormal");
  }
}

PcaTransform fit_pca(const Eigen::MatrixXd& data, std::size_t output_dim) {
  const auto n = static_cast<std::size_t>(data.rows());
  const auto dim = static_cast<std::size_t>(data.cols());
  if (output_dim < 1) throw InputError("PCA output dimension must be at least 1");
  if (output_dim > dim) {
    throw InputError("PCA output dimension " + std::to_string(output_dim) +
                     " exceeds input dimension " + std::to_string(dim));
  }
  if (n <= output_dim) {
    throw InputError("PCA needs more than " + std::to_string(output_dim) +
                     " points, got " + std::to_string(n));
  }
  if (!data.allFinite()) throw InputError("PCA data contains non-finite values");

  PcaTransform pca;
  pca.mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centred = data.rowwise() - pca.mean.transpose();
  const Eigen::MatrixXd cov = (centred.transpose() * centred) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericalError("PCA eigendecomposition failed");

  // Eigen sorts ascending; take from the back.
  const auto out = static_cast<Eigen::Index>(output_dim);
  const auto d = static_cast<Eigen::Index>(dim);
  pca.projection.resize(out, d);
  pca.eigenvalues.resize(out);
  for (Eigen::Index r = 0; r < out; ++r) {
    Eigen::VectorXd axis = solver.eigenvectors().col(d - 1 - r);
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0.0) axis = -axis;
    pca.projection.row(r) = axis.transpose();
    pca.eigenvalues(r) = std::max(0.0, solver.eigenvalues()(d - 1 - r));
  }
  return pca;
}

}  // namespace zsact
