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

#include "zsact/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "zsact/error.hpp"

namespace zsact {
namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

// Components whose total responsibility drops below this are re-seeded.
constexpr double kEmptyComponentMass = 1e-10;

void check_data(const Eigen::MatrixXd& data, std::size_t dim) {
  if (static_cast<std::size_t>(data.cols()) != dim) {
    throw InputError("data dimension " + std::to_string(data.cols()) +
                     " does not match model dimension " + std::to_string(dim));
  }
  if (!data.allFinite()) throw InputError("data contains non-finite values");
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double top = v.maxCoeff();
  if (!std::isfinite(top)) return top;
  return top + std::log((v.array() - top).exp().sum());
}

// Fills row i of `log_joint` with log w_c + log N(x_i; c).
void joint_log_densities(const GmmModel& model, const Eigen::MatrixXd& data,
                         Eigen::MatrixXd& log_joint) {
  const auto n = data.rows();
  const auto k = static_cast<Eigen::Index>(model.components());
  log_joint.resize(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::RowVectorXd inv = model.stddevs.row(c).cwiseInverse();
    const double norm = -0.5 * static_cast<double>(model.dim()) * kLogTwoPi -
                        model.stddevs.row(c).array().log().sum() +
                        std::log(model.weights(c));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double maha =
          ((data.row(i) - model.means.row(c)).cwiseProduct(inv)).squaredNorm();
      log_joint(i, c) = norm - 0.5 * maha;
    }
  }
}

// Total log-likelihood; leaves the responsibilities in `resp`.
double expectation(const GmmModel& model, const Eigen::MatrixXd& data,
                   Eigen::MatrixXd& resp) {
  joint_log_densities(model, data, resp);
  double total = 0.0;
  for (Eigen::Index i = 0; i < resp.rows(); ++i) {
    const double lse = log_sum_exp(resp.row(i).transpose());
    total += lse;
    resp.row(i) = (resp.row(i).array() - lse).exp();
  }
  return total;
}

Eigen::MatrixXd seed_means(const Eigen::MatrixXd& data, std::size_t k,
                           std::mt19937_64& rng) {
  const auto n = data.rows();
  Eigen::MatrixXd means(static_cast<Eigen::Index>(k), data.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  Eigen::Index first = pick(rng);
  means.row(0) = data.row(first);
  Eigen::VectorXd nearest = (data.rowwise() - data.row(first)).rowwise().squaredNorm();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[static_cast<std::size_t>(first)] = true;
  for (std::size_t c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Eigen::Index chosen = -1;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += nearest(i);
        if (nearest(i) > 0.0 && acc >= target) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (nearest(i) > 0.0) {
            chosen = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a chosen mean; take the first unused one.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!used[static_cast<std::size_t>(i)]) {
          chosen = i;
          break;
        }
      }
    }
    used[static_cast<std::size_t>(chosen)] = true;
    means.row(static_cast<Eigen::Index>(c)) = data.row(chosen);
    nearest = nearest.cwiseMin(
        (data.rowwise() - data.row(chosen)).rowwise().squaredNorm());
  }
  return means;
}

}  // namespace

void GmmModel::validate() const {
  const auto k = weights.size();
  if (k < 1) throw InputError("mixture needs at least one component");
  if (means.rows() != k || stddevs.rows() != k || stddevs.cols() != means.cols() ||
      means.cols() < 1) {
    throw InputError("mixture parameter shapes disagree");
  }
  if (!weights.allFinite() || !means.allFinite() || !stddevs.allFinite()) {
    throw InputError("mixture parameters must be finite");
  }
  if ((weights.array() <= 0.0).any()) throw InputError("mixture weights must be positive");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw InputError("mixture weights must sum to 1");
  if ((stddevs.array() <= 0.0).any()) throw InputError("mixture stddevs must be positive");
}

GmmModel fit_gmm(const Eigen::MatrixXd& data, std::size_t k, std::uint64_t seed,
                 const GmmFitOptions& options, GmmFitTrace* trace) {
  if (k < 1) throw InputError("component count must be at least 1");
  if (data.cols() < 1) throw InputError("data must have at least one dimension");
  if (static_cast<std::size_t>(data.rows()) < k) {
    throw InputError("need at least " + std::to_string(k) + " points to fit " +
                     std::to_string(k) + " components, got " +
                     std::to_string(data.rows()));
  }
  check_data(data, static_cast<std::size_t>(data.cols()));

  const auto n = data.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  const double inv_n = 1.0 / static_cast<double>(n);

  const Eigen::RowVectorXd global_mean = data.colwise().mean();
  const Eigen::RowVectorXd global_var =
      (data.rowwise() - global_mean).array().square().colwise().sum() * inv_n;
  const Eigen::RowVectorXd floor =
      (global_var * options.relative_variance_floor)
          .cwiseMax(options.absolute_variance_floor);
  const Eigen::RowVectorXd initial_std = global_var.cwiseMax(floor).cwiseSqrt();

  std::mt19937_64 rng(seed);
  GmmModel model;
  model.means = seed_means(data, k, rng);
  model.weights = Eigen::VectorXd::Constant(kk, 1.0 / static_cast<double>(k));
  model.stddevs = initial_std.replicate(kk, 1);

  GmmFitTrace local;
  GmmFitTrace& out = trace ? *trace : local;
  out = GmmFitTrace{};

  Eigen::MatrixXd resp;
  double previous = 0.0;
  for (std::size_t iter = 0;; ++iter) {
    const double mean_ll = expectation(model, data, resp) * inv_n;
    if (!std::isfinite(mean_ll)) throw NumericalError("log-likelihood became non-finite");
    out.mean_log_likelihood.push_back(mean_ll);
    if (iter > 0) {
      const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
      if (std::abs(mean_ll - previous) / scale < options.relative_tolerance) {
        out.converged = true;
        break;
      }
    }
    if (iter == options.max_iterations) break;
    previous = mean_ll;

    // M-step.
    const Eigen::VectorXd mass = resp.colwise().sum().transpose();
    bool reseeded = false;
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (Eigen::Index c = 0; c < kk; ++c) {
      if (mass(c) < kEmptyComponentMass) {
        // Re-seed at the point the current mixture explains least.
        const Eigen::VectorXd best = resp.rowwise().maxCoeff();
        Eigen::Index worst = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (taken[static_cast<std::size_t>(i)]) continue;
          if (worst < 0 || best(i) < best(worst)) worst = i;
        }
        taken[static_cast<std::size_t>(worst)] = true;
        model.means.row(c) = data.row(worst);
        model.stddevs.row(c) = initial_std;
        model.weights(c) = inv_n;
        reseeded = true;
        continue;
      }
      const Eigen::VectorXd g = resp.col(c);
      const Eigen::RowVectorXd mu = (g.transpose() * data) / mass(c);
      const Eigen::RowVectorXd var =
          (g.transpose() * (data.rowwise() - mu).array().square().matrix()) / mass(c);
      model.means.row(c) = mu;
      model.stddevs.row(c) = var.cwiseMax(floor).cwiseSqrt();
      model.weights(c) = mass(c) * inv_n;
    }
    model.weights /= model.weights.sum();
    ++out.iterations;
    if (reseeded) out.reseeds.push_back(out.mean_log_likelihood.size());
  }
  return model;
}

double log_component_density(const GmmModel& model, std::size_t component,
                             const Eigen::Ref<const Eigen::VectorXd>& x) {
  const auto c = static_cast<Eigen::Index>(component);
  const Eigen::VectorXd z =
      (x - model.means.row(c).transpose()).cwiseQuotient(model.stddevs.row(c).transpose());
  return -0.5 * static_cast<double>(model.dim()) * kLogTwoPi -
         model.stddevs.row(c).array().log().sum() - 0.5 * z.squaredNorm();
}

Eigen::VectorXd responsibilities(const GmmModel& model,
                                 const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (static_cast<std::size_t>(x.size()) != model.dim()) {
    throw InputError("point dimension does not match model dimension");
  }
  if (!x.allFinite()) throw InputError("point contains non-finite values");
  const auto k = model.components();
  Eigen::VectorXd logp(static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c) {
    logp(static_cast<Eigen::Index>(c)) =
        std::log(model.weights(static_cast<Eigen::Index>(c))) +
        log_component_density(model, c, x);
  }
  const double lse = log_sum_exp(logp);
  return (logp.array() - lse).exp();
}

double log_likelihood(const GmmModel& model, const Eigen::MatrixXd& data) {
  if (data.rows() == 0) throw InputError("log-likelihood of an empty data set");
  check_data(data, model.dim());
  Eigen::MatrixXd resp;
  return expectation(model, data, resp);
}

}  // namespace zsact
