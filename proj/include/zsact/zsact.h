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

/* C interface to the zero-shot action engine.
 *
 * Every object is an opaque handle released with its *_free function.
 * Functions return a zsact_status; on failure zsact_last_error() describes
 * the problem. The message lives in thread-local storage and stays valid
 * until the next failing call on the same thread. */

#ifndef ZSACT_ZSACT_H_
#define ZSACT_ZSACT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ZSACT_BUILDING_LIBRARY)
#    define ZSACT_API __declspec(dllexport)
#  else
#    define ZSACT_API __declspec(dllimport)
#  endif
#else
#  define ZSACT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zsact_status {
  ZSACT_OK = 0,
  /* Malformed or inconsistent input data. */
  ZSACT_ERR_INPUT = 1,
  /* Undefined numerical result (zero vector, failed fit). */
  ZSACT_ERR_NUMERIC = 2,
  /* Null handle, short buffer or similar caller error. */
  ZSACT_ERR_ARGUMENT = 3,
  ZSACT_ERR_INTERNAL = 4
} zsact_status;

typedef struct zsact_embeddings zsact_embeddings;
typedef struct zsact_model zsact_model;
typedef struct zsact_gmm zsact_gmm;
typedef struct zsact_affinity zsact_affinity;
typedef struct zsact_config zsact_config;

typedef void (*zsact_message_fn)(const char* message, void* user_data);

ZSACT_API const char* zsact_version(void);
ZSACT_API const char* zsact_last_error(void);

/* Word embeddings (plain-text "<vocab> <dim>" format). */
ZSACT_API zsact_status zsact_embeddings_load(const char* path, zsact_embeddings** out);
ZSACT_API void zsact_embeddings_free(zsact_embeddings* table);
ZSACT_API size_t zsact_embeddings_dim(const zsact_embeddings* table);
ZSACT_API size_t zsact_embeddings_size(const zsact_embeddings* table);
/* Copies the vector of `token` into out[0..dim) and sets *found to 1, or
 * sets *found to 0 for unknown tokens. */
ZSACT_API zsact_status zsact_embeddings_lookup(const zsact_embeddings* table, const char* token,
                                               double* out, size_t out_len, int* found);

/* Label encoders. `out_len` must hold the encoding; *written receives its
 * length. */
ZSACT_API zsact_status zsact_encode_awv(const zsact_embeddings* table, const char* label,
                                        double* out, size_t out_len, size_t* written);
ZSACT_API zsact_status zsact_model_load(const char* path, zsact_model** out);
ZSACT_API void zsact_model_free(zsact_model* model);
ZSACT_API zsact_status zsact_encode_fwv(const zsact_embeddings* table, const zsact_model* model,
                                        const char* label, int with_variance, double* out,
                                        size_t out_len, size_t* written);

/* Diagonal Gaussian mixtures. `data` is row-major, n rows of `dim`. */
ZSACT_API zsact_status zsact_gmm_fit(const double* data, size_t n, size_t dim, size_t k,
                                     uint64_t seed, zsact_gmm** out);
ZSACT_API void zsact_gmm_free(zsact_gmm* gmm);
ZSACT_API size_t zsact_gmm_components(const zsact_gmm* gmm);
ZSACT_API size_t zsact_gmm_dim(const zsact_gmm* gmm);
ZSACT_API zsact_status zsact_gmm_params(const zsact_gmm* gmm, double* weights, double* means,
                                        double* stddevs);
ZSACT_API zsact_status zsact_gmm_log_likelihood(const zsact_gmm* gmm, const double* data,
                                                size_t n, double* out);
ZSACT_API zsact_status zsact_gmm_responsibilities(const zsact_gmm* gmm, const double* x,
                                                  double* out);
ZSACT_API zsact_status zsact_gmm_save(const zsact_gmm* gmm, const char* path);
ZSACT_API zsact_status zsact_gmm_load(const char* path, zsact_gmm** out);

/* Object-to-action affinity matrices. `values` is row-major m x n. */
ZSACT_API zsact_status zsact_affinity_create(const double* values, size_t m, size_t n,
                                             zsact_affinity** out);
ZSACT_API zsact_status zsact_affinity_load(const char* path, zsact_affinity** out);
ZSACT_API void zsact_affinity_free(zsact_affinity* affinity);
ZSACT_API size_t zsact_affinity_objects(const zsact_affinity* affinity);
ZSACT_API size_t zsact_affinity_actions(const zsact_affinity* affinity);
ZSACT_API zsact_status zsact_affinity_values(const zsact_affinity* affinity, double* out);
ZSACT_API zsact_status zsact_affinity_sparsify(const zsact_affinity* affinity, size_t t_z,
                                               zsact_affinity** out);

/* Power (alpha > 0) + l2 normalisation followed by top-t_v masking. Pass
 * alpha = 0 to skip normalisation. */
ZSACT_API zsact_status zsact_prepare_scores(const double* scores, size_t m, double alpha,
                                            size_t t_v, double* out);
ZSACT_API zsact_status zsact_score_actions(const zsact_affinity* affinity, const double* scores,
                                           size_t m, double* out, size_t n);
ZSACT_API zsact_status zsact_classify(const zsact_affinity* affinity, const double* scores,
                                      size_t m, size_t* best_action, double* best_score);

/* Run configuration and pipeline commands. */
ZSACT_API zsact_status zsact_config_create(zsact_config** out);
ZSACT_API zsact_status zsact_config_load(const char* path, zsact_config** out);
ZSACT_API void zsact_config_free(zsact_config* config);
ZSACT_API zsact_status zsact_config_set(zsact_config* config, const char* key, const char* value);
/* Copies the textual value (NUL-terminated) into buf; *needed receives the
 * required size including the terminator. */
ZSACT_API zsact_status zsact_config_get(const zsact_config* config, const char* key, char* buf,
                                        size_t buf_len, size_t* needed);
/* The whole configuration as indented JSON, with the same buffer protocol
 * as zsact_config_get. */
ZSACT_API zsact_status zsact_config_dump(const zsact_config* config, char* buf, size_t buf_len,
                                         size_t* needed);
/* Writes 16 hex digits and a terminator. */
ZSACT_API zsact_status zsact_config_hash(const zsact_config* config, char out[17]);

/* Runs one subcommand ("fit-gmm", "encode", "translate", "classify",
 * "retrieve", "localize", "eval", "plot-data"). Warnings are passed to
 * `on_warning` when it is not NULL. */
ZSACT_API zsact_status zsact_run(const char* command, const zsact_config* config,
                                 zsact_message_fn on_warning, void* user_data);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* ZSACT_ZSACT_H_ */
