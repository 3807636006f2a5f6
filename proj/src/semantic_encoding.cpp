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

#include "zsact/semantic_encoding.hpp"

#include <cmath>
#include <string>

#include "zsact/error.hpp"

namespace zsact {
namespace {

Eigen::MatrixXd word_rows(const LabelDescription& label, const EmbeddingTable& table) {
  if (!label.encodable()) {
    throw InputError("label '" + label.raw + "' has no words in the embedding vocabulary");
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(label.resolved.size()),
                       static_cast<Eigen::Index>(table.dim()));
  for (std::size_t i = 0; i < label.resolved.size(); ++i) {
    const auto v = table.lookup(label.resolved[i]);
    if (!v) {
      throw InputError("word '" + label.resolved[i] + "' of label '" + label.raw +
                       "' is not in the embedding table");
    }
    rows.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(v->data(), static_cast<Eigen::Index>(v->size()));
  }
  return rows;
}

void power_normalize(Eigen::VectorXd& v, double alpha) {
  for (auto& x : v) x = std::copysign(std::pow(std::abs(x), alpha), x);
}

}  // namespace

std::string_view to_string(Encoder encoder) {
  return encoder == Encoder::kAwv ? "awv" : "fwv";
}

std::string_view to_string(FisherBlocks blocks) {
  return blocks == FisherBlocks::kMeanOnly ? "mean" : "mean+variance";
}

Encoder parse_encoder(std::string_view text) {
  if (text == "awv" || text == "AWV") return Encoder::kAwv;
  if (text == "fwv" || text == "FWV") return Encoder::kFwv;
  throw InputError("unknown encoder '" + std::string(text) + "' (expected awv or fwv)");
}

FisherBlocks parse_fisher_blocks(std::string_view text) {
  if (text == "mean") return FisherBlocks::kMeanOnly;
  if (text == "mean+variance" || text == "mean-variance") return FisherBlocks::kMeanAndVariance;
  throw InputError("unknown Fisher block choice '" + std::string(text) +
                   "' (expected mean or mean+variance)");
}

SemanticVector encode_awv(const LabelDescription& label, const EmbeddingTable& table,
                          bool normalize) {
  const Eigen::MatrixXd rows = word_rows(label, table);
  SemanticVector out;
  out.encoder = Encoder::kAwv;
  out.values = rows.colwise().mean().transpose();
  const double scale = rows.rowwise().norm().maxCoeff();
  const double norm = out.values.norm();
  if (!(norm > 1e-12 * scale)) {
    throw NumericalError("degenerate zero encoding for label '" + label.raw + "'");
  }
  if (normalize) out.values /= norm;
  return out;
}

std::size_t fisher_dim(const GmmModel& model, FisherBlocks blocks) {
  const std::size_t per = blocks == FisherBlocks::kMeanOnly ? 1 : 2;
  return per * model.components() * model.dim();
}

Eigen::VectorXd fisher_vector(const Eigen::MatrixXd& points, const GmmModel& model,
                              FisherBlocks blocks) {
  if (static_cast<std::size_t>(points.cols()) != model.dim()) {
    throw InputError("points have dimension " + std::to_string(points.cols()) +
                     ", model expects " + std::to_string(model.dim()));
  }
  const auto k = static_cast<Eigen::Index>(model.components());
  const auto d = static_cast<Eigen::Index>(model.dim());
  const bool with_variance = blocks == FisherBlocks::kMeanAndVariance;
  const Eigen::Index stride = with_variance ? 2 * d : d;

  Eigen::MatrixXd resp(points.rows(), k);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    resp.row(i) = responsibilities(model, points.row(i).transpose()).transpose();
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(k * stride);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::VectorXd g_mean = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd g_var = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const Eigen::VectorXd z = (points.row(i) - model.means.row(c))
                                    .cwiseQuotient(model.stddevs.row(c))
                                    .transpose();
      g_mean += resp(i, c) * z;
      if (with_variance) g_var += resp(i, c) * (z.array().square() - 1.0).matrix();
    }
    const double w = model.weights(c);
    out.segment(c * stride, d) = g_mean / std::sqrt(w);
    if (with_variance) out.segment(c * stride + d, d) = g_var / std::sqrt(2.0 * w);
  }
  return out;
}

SemanticVector encode_fwv(const LabelDescription& label, const EmbeddingTable& table,
                          const FisherModel& model, FisherBlocks blocks, bool normalize,
                          double power_alpha) {
  if (model.gmm.dim() != model.pca.output_dim()) {
    throw InputError("mixture dimension " + std::to_string(model.gmm.dim()) +
                     " does not match PCA output dimension " +
                     std::to_string(model.pca.output_dim()));
  }
  if (model.pca.input_dim() != table.dim()) {
    throw InputError("PCA input dimension " + std::to_string(model.pca.input_dim()) +
                     " does not match embedding dimension " + std::to_string(table.dim()));
  }
  const Eigen::MatrixXd projected = model.pca.apply_rows(word_rows(label, table));
  SemanticVector out;
  out.encoder = Encoder::kFwv;
  out.values = fisher_vector(projected, model.gmm, blocks);
  // Only an exactly zero vector is degenerate: a word far from every
  // component still has a tiny but well-defined direction.
  if (!out.values.allFinite() || (out.values.array() == 0.0).all()) {
    throw NumericalError("degenerate encoding for label '" + label.raw + "'");
  }
  if (normalize) {
    power_normalize(out.values, power_alpha);
    const double norm = out.values.stableNorm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericalError("degenerate encoding for label '" + label.raw + "'");
    }
    out.values /= norm;
  }
  return out;
}

EncodedLabels encode_all(std::span<const LabelDescription> labels,
                         const EmbeddingTable& table, const EncoderConfig& config,
                         const FisherModel* model) {
  if (config.encoder == Encoder::kFwv && model == nullptr) {
    throw InputError("FWV encoding requires a fitted PCA + mixture model");
  }
  EncodedLabels out;
  out.encoder = config.encoder;
  const std::size_t dim = config.encoder == Encoder::kAwv
                              ? table.dim()
                              : fisher_dim(model->gmm, config.blocks);
  out.rows.resize(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& label = labels[i];
    if (!label.encodable()) {
      throw InputError("label " + std::to_string(i) + " '" + label.raw +
                       "' has no words in the embedding vocabulary");
    }
    const SemanticVector v =
        config.encoder == Encoder::kAwv
            ? encode_awv(label, table, config.normalize)
            : encode_fwv(label, table, *model, config.blocks, config.normalize,
                         config.power_alpha);
    out.rows.row(static_cast<Eigen::Index>(i)) = v.values.transpose();
    out.names.push_back(label.raw);
  }
  return out;
}

Eigen::MatrixXd resolved_word_matrix(std::span<const LabelDescription> labels,
                                     const EmbeddingTable& table) {
  std::size_t count = 0;
  for (const auto& l : labels) count += l.resolved.size();
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(table.dim()));
  Eigen::Index r = 0;
  for (const auto& l : labels) {
    for (const auto& w : l.resolved) {
      const auto v = table.lookup(w);
      rows.row(r++) = Eigen::Map<const Eigen::RowVectorXd>(v->data(),
                                                           static_cast<Eigen::Index>(v->size()));
    }
  }
  return rows;
}

}  // namespace zsact
