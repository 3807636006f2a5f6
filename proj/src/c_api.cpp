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

#include "zsact/zsact.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "zsact/config.hpp"
#include "zsact/embedding_store.hpp"
#include "zsact/error.hpp"
#include "zsact/formats.hpp"
#include "zsact/gmm.hpp"
#include "zsact/pipeline.hpp"
#include "zsact/semantic_encoding.hpp"
#include "zsact/text_io.hpp"
#include "zsact/translation.hpp"

struct zsact_embeddings {
  zsact::EmbeddingTable table;
};
struct zsact_model {
  zsact::FisherModel model;
};
struct zsact_gmm {
  zsact::GmmModel model;
};
struct zsact_affinity {
  zsact::AffinityMatrix matrix;
};
struct zsact_config {
  zsact::RunConfig config;
};

namespace {

thread_local std::string last_error;

zsact_status fail(zsact_status status, const char* message) {
  last_error = message;
  return status;
}

class ArgumentError : public std::exception {
 public:
  explicit ArgumentError(const char* what) : what_(what) {}
  const char* what() const noexcept override { return what_; }

 private:
  const char* what_;
};

template <typename T>
void require(const T* p, const char* name) {
  if (p == nullptr) throw ArgumentError(name);
}

template <typename F>
zsact_status guarded(F&& body) {
  try {
    body();
    return ZSACT_OK;
  } catch (const ArgumentError& e) {
    return fail(ZSACT_ERR_ARGUMENT, (std::string("invalid argument: ") + e.what()).c_str());
  } catch (const zsact::InputError& e) {
    return fail(ZSACT_ERR_INPUT, e.what());
  } catch (const zsact::NumericalError& e) {
    return fail(ZSACT_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ZSACT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ZSACT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ZSACT_ERR_INTERNAL, "unknown error");
  }
}

void copy_out(const Eigen::VectorXd& v, double* out, size_t out_len, size_t* written) {
  if (written) *written = static_cast<size_t>(v.size());
  if (out_len < static_cast<size_t>(v.size())) throw ArgumentError("output buffer too small");
  std::copy(v.begin(), v.end(), out);
}

zsact::ObjectScores scores_from(const double* p, size_t m) {
  zsact::ObjectScores s;
  s.values.assign(p, p + m);
  return s;
}

}  // namespace

extern "C" {

const char* zsact_version(void) { return "1.0.0"; }

const char* zsact_last_error(void) { return last_error.c_str(); }

zsact_status zsact_embeddings_load(const char* path, zsact_embeddings** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new zsact_embeddings{zsact::EmbeddingTable::load(path)};
  });
}

void zsact_embeddings_free(zsact_embeddings* table) { delete table; }

size_t zsact_embeddings_dim(const zsact_embeddings* table) {
  return table ? table->table.dim() : 0;
}

size_t zsact_embeddings_size(const zsact_embeddings* table) {
  return table ? table->table.size() : 0;
}

zsact_status zsact_embeddings_lookup(const zsact_embeddings* table, const char* token,
                                     double* out, size_t out_len, int* found) {
  return guarded([&] {
    require(table, "table");
    require(token, "token");
    require(found, "found");
    const auto v = table->table.lookup(token);
    *found = v ? 1 : 0;
    if (!v) return;
    require(out, "out");
    if (out_len < v->size()) throw ArgumentError("output buffer too small");
    std::copy(v->begin(), v->end(), out);
  });
}

zsact_status zsact_encode_awv(const zsact_embeddings* table, const char* label, double* out,
                              size_t out_len, size_t* written) {
  return guarded([&] {
    require(table, "table");
    require(label, "label");
    require(out, "out");
    const auto l = zsact::tokenize_label(label, table->table);
    copy_out(zsact::encode_awv(l, table->table).values, out, out_len, written);
  });
}

zsact_status zsact_model_load(const char* path, zsact_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new zsact_model{zsact::read_model(path)};
  });
}

void zsact_model_free(zsact_model* model) { delete model; }

zsact_status zsact_encode_fwv(const zsact_embeddings* table, const zsact_model* model,
                              const char* label, int with_variance, double* out,
                              size_t out_len, size_t* written) {
  return guarded([&] {
    require(table, "table");
    require(model, "model");
    require(label, "label");
    require(out, "out");
    const auto l = zsact::tokenize_label(label, table->table);
    const auto blocks = with_variance ? zsact::FisherBlocks::kMeanAndVariance
                                      : zsact::FisherBlocks::kMeanOnly;
    copy_out(zsact::encode_fwv(l, table->table, model->model, blocks).values, out, out_len,
             written);
  });
}

zsact_status zsact_gmm_fit(const double* data, size_t n, size_t dim, size_t k, uint64_t seed,
                           zsact_gmm** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    const Eigen::MatrixXd rows = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                                Eigen::Dynamic, Eigen::RowMajor>>(
        data, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
    *out = new zsact_gmm{zsact::fit_gmm(rows, k, seed)};
  });
}

void zsact_gmm_free(zsact_gmm* gmm) { delete gmm; }

size_t zsact_gmm_components(const zsact_gmm* gmm) { return gmm ? gmm->model.components() : 0; }

size_t zsact_gmm_dim(const zsact_gmm* gmm) { return gmm ? gmm->model.dim() : 0; }

zsact_status zsact_gmm_params(const zsact_gmm* gmm, double* weights, double* means,
                              double* stddevs) {
  return guarded([&] {
    require(gmm, "gmm");
    const auto& m = gmm->model;
    const auto k = static_cast<Eigen::Index>(m.components());
    const auto d = static_cast<Eigen::Index>(m.dim());
    for (Eigen::Index c = 0; c < k; ++c) {
      if (weights) weights[c] = m.weights(c);
      for (Eigen::Index j = 0; j < d; ++j) {
        if (means) means[c * d + j] = m.means(c, j);
        if (stddevs) stddevs[c * d + j] = m.stddevs(c, j);
      }
    }
  });
}

zsact_status zsact_gmm_log_likelihood(const zsact_gmm* gmm, const double* data, size_t n,
                                      double* out) {
  return guarded([&] {
    require(gmm, "gmm");
    require(data, "data");
    require(out, "out");
    const Eigen::MatrixXd rows = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                                Eigen::Dynamic, Eigen::RowMajor>>(
        data, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(gmm->model.dim()));
    *out = zsact::log_likelihood(gmm->model, rows);
  });
}

zsact_status zsact_gmm_responsibilities(const zsact_gmm* gmm, const double* x, double* out) {
  return guarded([&] {
    require(gmm, "gmm");
    require(x, "x");
    require(out, "out");
    const Eigen::Map<const Eigen::VectorXd> point(x, static_cast<Eigen::Index>(gmm->model.dim()));
    const Eigen::VectorXd r = zsact::responsibilities(gmm->model, point);
    std::copy(r.begin(), r.end(), out);
  });
}

zsact_status zsact_gmm_save(const zsact_gmm* gmm, const char* path) {
  return guarded([&] {
    require(gmm, "gmm");
    require(path, "path");
    zsact::write_file(path, zsact::gmm_to_json(gmm->model).dump(1) + "\n");
  });
}

zsact_status zsact_gmm_load(const char* path, zsact_gmm** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const std::string text = zsact::read_file(path);
    try {
      *out = new zsact_gmm{zsact::gmm_from_json(nlohmann::json::parse(text))};
    } catch (const nlohmann::json::exception& e) {
      throw zsact::InputError(std::string(path) + ": " + e.what());
    }
  });
}

zsact_status zsact_affinity_create(const double* values, size_t m, size_t n,
                                   zsact_affinity** out) {
  return guarded([&] {
    require(values, "values");
    require(out, "out");
    std::vector<std::string> objects;
    std::vector<std::string> actions;
    for (size_t i = 0; i < m; ++i) objects.push_back("object" + std::to_string(i));
    for (size_t j = 0; j < n; ++j) actions.push_back("action" + std::to_string(j));
    *out = new zsact_affinity{zsact::AffinityMatrix(std::move(objects), std::move(actions),
                                                    std::vector<double>(values, values + m * n))};
  });
}

zsact_status zsact_affinity_load(const char* path, zsact_affinity** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new zsact_affinity{zsact::read_affinity(path)};
  });
}

void zsact_affinity_free(zsact_affinity* affinity) { delete affinity; }

size_t zsact_affinity_objects(const zsact_affinity* affinity) {
  return affinity ? affinity->matrix.objects_count() : 0;
}

size_t zsact_affinity_actions(const zsact_affinity* affinity) {
  return affinity ? affinity->matrix.actions_count() : 0;
}

zsact_status zsact_affinity_values(const zsact_affinity* affinity, double* out) {
  return guarded([&] {
    require(affinity, "affinity");
    require(out, "out");
    const auto& v = affinity->matrix.values();
    std::copy(v.begin(), v.end(), out);
  });
}

zsact_status zsact_affinity_sparsify(const zsact_affinity* affinity, size_t t_z,
                                     zsact_affinity** out) {
  return guarded([&] {
    require(affinity, "affinity");
    require(out, "out");
    *out = new zsact_affinity{zsact::sparsify_action(affinity->matrix, t_z)};
  });
}

zsact_status zsact_prepare_scores(const double* scores, size_t m, double alpha, size_t t_v,
                                  double* out) {
  return guarded([&] {
    require(scores, "scores");
    require(out, "out");
    zsact::ScorePipeline pipeline;
    pipeline.power_normalize = alpha > 0.0;
    pipeline.alpha = alpha > 0.0 ? alpha : 1.0;
    pipeline.t_v = t_v;
    const auto prepared = zsact::prepare_scores(scores_from(scores, m), pipeline);
    std::copy(prepared.values.begin(), prepared.values.end(), out);
  });
}

zsact_status zsact_score_actions(const zsact_affinity* affinity, const double* scores, size_t m,
                                 double* out, size_t n) {
  return guarded([&] {
    require(affinity, "affinity");
    require(scores, "scores");
    require(out, "out");
    if (n < affinity->matrix.actions_count()) throw ArgumentError("output buffer too small");
    const auto s = zsact::score_actions(scores_from(scores, m), affinity->matrix);
    std::copy(s.begin(), s.end(), out);
  });
}

zsact_status zsact_classify(const zsact_affinity* affinity, const double* scores, size_t m,
                            size_t* best_action, double* best_score) {
  return guarded([&] {
    require(affinity, "affinity");
    require(scores, "scores");
    const auto p = zsact::classify("", scores_from(scores, m), affinity->matrix);
    if (best_action) *best_action = p.best().action;
    if (best_score) *best_score = p.best().score;
  });
}

zsact_status zsact_config_create(zsact_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new zsact_config{};
  });
}

zsact_status zsact_config_load(const char* path, zsact_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new zsact_config{zsact::RunConfig::load(path)};
  });
}

void zsact_config_free(zsact_config* config) { delete config; }

zsact_status zsact_config_set(zsact_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
  });
}

zsact_status zsact_config_get(const zsact_config* config, const char* key, char* buf,
                              size_t buf_len, size_t* needed) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    const std::string v = config->config.get(key);
    if (needed) *needed = v.size() + 1;
    if (buf == nullptr || buf_len < v.size() + 1) throw ArgumentError("output buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

zsact_status zsact_config_dump(const zsact_config* config, char* buf, size_t buf_len,
                               size_t* needed) {
  return guarded([&] {
    require(config, "config");
    const std::string v = config->config.to_json().dump(2);
    if (needed) *needed = v.size() + 1;
    if (buf == nullptr || buf_len < v.size() + 1) throw ArgumentError("output buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

zsact_status zsact_config_hash(const zsact_config* config, char out[17]) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const std::string h = config->config.hash();
    std::memcpy(out, h.c_str(), 17);
  });
}

zsact_status zsact_run(const char* command, const zsact_config* config,
                       zsact_message_fn on_warning, void* user_data) {
  return guarded([&] {
    require(command, "command");
    require(config, "config");
    const auto result = zsact::run_command(command, config->config);
    if (on_warning) {
      for (const auto& w : result.warnings) on_warning(w.c_str(), user_data);
    }
  });
}

}  // extern "C"
