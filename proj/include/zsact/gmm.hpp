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

#ifndef ZSACT_GMM_HPP_
#define ZSACT_GMM_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace zsact {

// Diagonal-covariance Gaussian mixture. Row c of `means` / `stddevs` holds
// component c.
struct GmmModel {
  Eigen::VectorXd weights;
  Eigen::MatrixXd means;
  Eigen::MatrixXd stddevs;

  std::size_t components() const { return static_cast<std::size_t>(weights.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(means.cols()); }

  // Throws InputError unless shapes agree, weights are positive and sum to
  // one (1e-9), and every stddev is positive and finite.
  void validate() const;
};

struct GmmFitOptions {
  std::size_t max_iterations = 200;
  // Stop once |Δ mean log-likelihood| / |previous| falls below this.
  double relative_tolerance = 1e-6;
  // Variance floor, relative to the global per-dimension variance.
  double relative_variance_floor = 1e-6;
  double absolute_variance_floor = 1e-12;
};

// Per-iteration record of an EM run. `mean_log_likelihood[t]` is the
// average log-likelihood of the data under the parameters after t M-steps.
struct GmmFitTrace {
  std::vector<double> mean_log_likelihood;
  // Trace indices whose parameters came from an M-step that re-seeded an
  // empty component; monotonicity is only guaranteed between re-seeds.
  std::vector<std::size_t> reseeds;
  std::size_t iterations = 0;
  bool converged = false;
};

// EM fit on the rows of `data`. Means are seeded k-means++ style from
// `seed`, weights start uniform and stddevs start at the global
// per-dimension stddev. Deterministic for identical inputs.
GmmModel fit_gmm(const Eigen::MatrixXd& data, std::size_t k, std::uint64_t seed,
                 const GmmFitOptions& options = {}, GmmFitTrace* trace = nullptr);

// log N(x; mean_c, diag(stddev_c^2)).
double log_component_density(const GmmModel& model, std::size_t component,
                             const Eigen::Ref<const Eigen::VectorXd>& x);

// Posterior over components for one point, via log-sum-exp.
Eigen::VectorXd responsibilities(const GmmModel& model,
                                 const Eigen::Ref<const Eigen::VectorXd>& x);

// Sum over rows of log sum_c w_c N(x; mean_c, stddev_c^2).
double log_likelihood(const GmmModel& model, const Eigen::MatrixXd& data);

}  // namespace zsact

#endif  // ZSACT_GMM_HPP_
