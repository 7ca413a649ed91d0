/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SPIRAL_H
#define SPIRAL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  SPIRAL_ALGORITHM_PERCEPTRON = 0,
  SPIRAL_ALGORITHM_AVERAGED_PERCEPTRON = 1,
  SPIRAL_ALGORITHM_AROW = 2,
  SPIRAL_ALGORITHM_SPIRAL = 3,
  SPIRAL_ALGORITHM_CONSTANT = 4,
} SpiralAlgorithm;

typedef enum {
  SPIRAL_STATUS_OK = 0,
  SPIRAL_STATUS_NULL_POINTER = 1,
  SPIRAL_STATUS_INVALID_ARGUMENT = 2,
  SPIRAL_STATUS_DIMENSION_MISMATCH = 3,
  SPIRAL_STATUS_INVALID_LABEL = 4,
  SPIRAL_STATUS_EMPTY_DATASET = 5,
  SPIRAL_STATUS_NUMERIC = 6,
  SPIRAL_STATUS_IO = 7,
  SPIRAL_STATUS_PARSE = 8,
  SPIRAL_STATUS_PANIC = 9,
} SpiralStatus;

// Opaque labelled dataset.
typedef struct SpiralDataset SpiralDataset;

// Opaque trained or in-progress model.
typedef struct SpiralModel SpiralModel;

// Learner settings. Start from [`spiral_config_default`].
typedef struct {
  SpiralAlgorithm algorithm;
  // AROW/SPIRAL smoothing constant, must be positive.
  double r;
  uint32_t epochs;
  uint64_t seed;
  // `Σ ← (Σ − Σ·x·xᵀ·Σ) / (c + r)` instead of `Σ ← Σ − Σ·x·xᵀ·Σ / (c + r)`.
  // Not guaranteed to stay positive semi-definite.
  bool paper_literal_covariance;
  bool spike_enabled;
  // `true`: confidence ratio is the gate variance; `false`: its std-dev.
  bool spike_scale_is_variance;
} SpiralConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or `""`. The pointer is
// valid until the next `spiral_*` call on the same thread.
const char *spiral_last_error(void);

// Default settings for `algorithm` (r = 0.1, one epoch, standard
// covariance update, spikes on, variance scale).
SpiralConfig spiral_config_default(SpiralAlgorithm algorithm, uint64_t seed);

// # Safety
// `out` must be a valid pointer to writable storage for one handle.
SpiralStatus spiral_dataset_new(size_t dim, SpiralDataset **out);

// Appends one example; `label` must be -1 or +1.
//
// # Safety
// `ds` must be a live dataset handle and `x` must point to `len` doubles.
SpiralStatus spiral_dataset_push(SpiralDataset *ds, const double *x, size_t len, int32_t label);

// Loads a `label,f0,f1,…` CSV file.
//
// # Safety
// `file_path` must be a NUL-terminated string and `out` writable.
SpiralStatus spiral_dataset_load_csv(const char *file_path, SpiralDataset **out);

// Number of examples, or 0 for a null handle.
//
// # Safety
// `ds` must be null or a live dataset handle.
size_t spiral_dataset_len(const SpiralDataset *ds);

// Feature dimension, or 0 for a null handle.
//
// # Safety
// `ds` must be null or a live dataset handle.
size_t spiral_dataset_dim(const SpiralDataset *ds);

// # Safety
// `ds` must be null or a handle not yet freed.
void spiral_dataset_free(SpiralDataset *ds);

// Untrained model of dimension `dim`.
//
// # Safety
// `config` must point to a valid config and `out` be writable.
SpiralStatus spiral_model_new(const SpiralConfig *config, size_t dim, SpiralModel **out);

// Trains a fresh model for `config.epochs` passes over `ds`.
//
// # Safety
// `config` and `ds` must be valid; `out` writable.
SpiralStatus spiral_train(const SpiralConfig *config, const SpiralDataset *ds, SpiralModel **out);

// One online step.
//
// # Safety
// `model` must be live and `x` must point to `len` doubles.
SpiralStatus spiral_model_learn_one(SpiralModel *model, const double *x, size_t len, int32_t label);

// Raw score `w·x` with the model's inference weights.
//
// # Safety
// `model` must be live, `x` must point to `len` doubles, `out` writable.
SpiralStatus spiral_model_score(const SpiralModel *model, const double *x, size_t len, double *out);

// Predicted label, -1 or +1 (a zero score predicts +1).
//
// # Safety
// `model` must be live, `x` must point to `len` doubles, `out` writable.
SpiralStatus spiral_model_predict(const SpiralModel *model,
                                  const double *x,
                                  size_t len,
                                  int32_t *out);

// Model dimension, or 0 for a null handle.
//
// # Safety
// `model` must be null or live.
size_t spiral_model_dim(const SpiralModel *model);

// Copies the settings the model was built with.
//
// # Safety
// `model` must be live and `out` writable.
SpiralStatus spiral_model_config(const SpiralModel *model, SpiralConfig *out);

// Copies the inference weights into `out`, which must hold exactly `dim`.
//
// # Safety
// `model` must be live and `out` must point to `len` writable doubles.
SpiralStatus spiral_model_weights(const SpiralModel *model, double *out, size_t len);

// Fraction of `ds` classified correctly.
//
// # Safety
// `model` and `ds` must be live and `out` writable.
SpiralStatus spiral_model_accuracy(const SpiralModel *model, const SpiralDataset *ds, double *out);

// Serializes to the JSON model document. Release with [`spiral_string_free`].
//
// # Safety
// `model` must be live and `out` writable.
SpiralStatus spiral_model_to_json(const SpiralModel *model, char **out);

// # Safety
// `json` must be a NUL-terminated string and `out` writable.
SpiralStatus spiral_model_from_json(const char *json, SpiralModel **out);

// # Safety
// `model` must be live and `file_path` a NUL-terminated string.
SpiralStatus spiral_model_save(const SpiralModel *model, const char *file_path);

// # Safety
// `file_path` must be a NUL-terminated string and `out` writable.
SpiralStatus spiral_model_load(const char *file_path, SpiralModel **out);

// # Safety
// `model` must be null or a handle not yet freed.
void spiral_model_free(SpiralModel *model);

// Frees a string returned by this library.
//
// # Safety
// `s` must be null or a string from [`spiral_model_to_json`] not yet freed.
void spiral_string_free(char *s);

// Library version as a static NUL-terminated string.
const char *spiral_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPIRAL_H */
