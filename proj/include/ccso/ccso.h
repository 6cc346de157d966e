// Copyright 2026 The CCSO Filter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the cross-component sample offset (CCSO) filter library.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns a ccso_status; on failure a message (and, for parse
 * errors, a bit offset) is available from the calling thread through
 * ccso_last_error_message() / ccso_last_error_bit_offset().
 */
#ifndef CCSO_CCSO_H_
#define CCSO_CCSO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CCSO_BUILDING_LIBRARY)
#define CCSO_API __declspec(dllexport)
#else
#define CCSO_API __declspec(dllimport)
#endif
#else
#define CCSO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the tool's process exit codes. */
typedef enum ccso_status {
  CCSO_OK = 0,
  CCSO_ERROR_INVALID_ARGUMENT = 1,
  CCSO_ERROR_INPUT = 2,
  CCSO_ERROR_OUTPUT = 3,
  CCSO_ERROR_PARSE = 4,
  CCSO_ERROR_INTERNAL = 5
} ccso_status;

typedef enum ccso_plane { CCSO_PLANE_Y = 0, CCSO_PLANE_CB = 1, CCSO_PLANE_CR = 2 } ccso_plane;

#define CCSO_PLANE_MASK_Y 0x1u
#define CCSO_PLANE_MASK_CB 0x2u
#define CCSO_PLANE_MASK_CR 0x4u
#define CCSO_PLANE_MASK_ALL 0x7u

typedef enum ccso_filter_path {
  CCSO_FILTER_BATCH = 0,
  CCSO_FILTER_SCALAR = 1
} ccso_filter_path;

typedef struct ccso_frame ccso_frame;
typedef struct ccso_params ccso_params;
typedef struct ccso_params_file ccso_params_file;

CCSO_API const char* ccso_version(void);
CCSO_API const char* ccso_last_error_message(void);
/* Bit offset of the last parse error, or -1. */
CCSO_API int64_t ccso_last_error_bit_offset(void);

/* ---- frames: planar 4:2:0, 8 or 10 bit ---- */

CCSO_API ccso_status ccso_frame_create(int width, int height, int bit_depth,
                                       ccso_frame** out);
CCSO_API ccso_status ccso_frame_clone(const ccso_frame* frame, ccso_frame** out);
CCSO_API void ccso_frame_destroy(ccso_frame* frame);
CCSO_API int ccso_frame_width(const ccso_frame* frame);
CCSO_API int ccso_frame_height(const ccso_frame* frame);
CCSO_API int ccso_frame_bit_depth(const ccso_frame* frame);
CCSO_API int ccso_frame_plane_width(const ccso_frame* frame, ccso_plane plane);
CCSO_API int ccso_frame_plane_height(const ccso_frame* frame, ccso_plane plane);
CCSO_API ccso_status ccso_frame_get_sample(const ccso_frame* frame, ccso_plane plane,
                                           int y, int x, uint16_t* value);
CCSO_API ccso_status ccso_frame_set_sample(ccso_frame* frame, ccso_plane plane,
                                           int y, int x, uint16_t value);
/* 1 when geometry, bit depth and every sample match. */
CCSO_API int ccso_frame_equal(const ccso_frame* a, const ccso_frame* b);

/* Raw planar YUV: Y, Cb, Cr; 1 byte per 8-bit sample, 2 bytes little-endian
 * per 10-bit sample. */
CCSO_API size_t ccso_raw_frame_bytes(int width, int height, int bit_depth);
CCSO_API ccso_status ccso_raw_file_frame_count(const char* path, int width,
                                               int height, int bit_depth,
                                               size_t* count);
CCSO_API ccso_status ccso_frame_read_raw(const char* path, int width, int height,
                                         int bit_depth, size_t frame_index,
                                         ccso_frame** out);
/* Writes |count| frames to |path|, replacing it. */
CCSO_API ccso_status ccso_frames_write_raw(const char* path,
                                           const ccso_frame* const* frames,
                                           size_t count);

/* ---- parameters ---- */

typedef struct ccso_plane_info {
  int enable;
  int bo_only;
  int max_band_log2;
  int quant_step_idx;
  int filter_shape_idx;
  int edge_clf;
  int lut_size;
  int unit_count;
  int units_enabled;
} ccso_plane_info;

CCSO_API void ccso_params_destroy(ccso_params* params);
CCSO_API int ccso_params_frame_flag(const ccso_params* params);
CCSO_API ccso_status ccso_params_plane_info(const ccso_params* params,
                                            ccso_plane plane, ccso_plane_info* info);
/* Offset at packed class |index| of |plane|'s LUT. */
CCSO_API ccso_status ccso_params_lut_entry(const ccso_params* params, ccso_plane plane,
                                           int index, int* offset);
/* Serialized payload length in bits before padding. */
CCSO_API ccso_status ccso_params_bit_cost(const ccso_params* params, int width,
                                          int height, size_t* bits);
/* Payload bytes. Pass buffer == NULL to query the size. */
CCSO_API ccso_status ccso_params_encode(const ccso_params* params, int width,
                                        int height, uint8_t* buffer,
                                        size_t capacity, size_t* size);
CCSO_API ccso_status ccso_params_decode(const uint8_t* buffer, size_t size,
                                        int width, int height, ccso_params** out);

/* .ccso container holding one parameter set per frame. */
CCSO_API ccso_status ccso_params_file_create(int width, int height, int bit_depth,
                                             ccso_params_file** out);
CCSO_API void ccso_params_file_destroy(ccso_params_file* file);
CCSO_API ccso_status ccso_params_file_read(const char* path, ccso_params_file** out);
CCSO_API ccso_status ccso_params_file_write(const ccso_params_file* file,
                                            const char* path);
CCSO_API int ccso_params_file_width(const ccso_params_file* file);
CCSO_API int ccso_params_file_height(const ccso_params_file* file);
CCSO_API int ccso_params_file_bit_depth(const ccso_params_file* file);
CCSO_API size_t ccso_params_file_frame_count(const ccso_params_file* file);
CCSO_API ccso_status ccso_params_file_append(ccso_params_file* file,
                                             uint32_t frame_index,
                                             const ccso_params* params);
/* Copies entry |i| out; the caller destroys |*out|. */
CCSO_API ccso_status ccso_params_file_get(const ccso_params_file* file, size_t i,
                                          uint32_t* frame_index, ccso_params** out);

/* ---- encoder search ---- */

typedef struct ccso_search_options {
  double lambda;                /* squared error per bit, >= 0 */
  int max_iterations;           /* per combination, >= 1 */
  unsigned plane_mask;          /* CCSO_PLANE_MASK_* */
  int sweep_combined;           /* visit band + edge classifier combinations */
  int sweep_bo_only;            /* visit band-only combinations */
  unsigned shape_mask;          /* bit i: filter shape i (0-5) */
  unsigned quant_step_mask;     /* bit i: quant_step_idx i (0-3) */
  unsigned combined_band_mask;  /* bit i: max_band_log2 i (0-3), combined */
  unsigned edge_clf_mask;       /* bit i: edge_clf i (0-1) */
  unsigned bo_band_mask;        /* bit i: max_band_log2 i (0-7), band-only */
} ccso_search_options;

typedef struct ccso_search_stats {
  uint64_t pre_sse[3];
  uint64_t post_sse[3];
  int iterations[3];
  double total_cost;
} ccso_search_stats;

/* Full sweep, lambda 0, 15 iterations, all planes. */
CCSO_API void ccso_search_options_default(ccso_search_options* options);

/* |classification| may be NULL to classify from |recon|. |stats| may be
 * NULL. */
CCSO_API ccso_status ccso_search(const ccso_frame* orig, const ccso_frame* recon,
                                 const ccso_frame* classification,
                                 const ccso_search_options* options,
                                 ccso_params** out_params,
                                 ccso_search_stats* stats);

/* ---- filtering ---- */

CCSO_API ccso_status ccso_apply(const ccso_frame* recon,
                                const ccso_frame* classification,
                                const ccso_params* params, ccso_filter_path path,
                                ccso_frame** out);

/* ---- metrics ---- */

typedef struct ccso_quality_report {
  uint64_t sse[3];
  double mse[3];
  double psnr[3];   /* valid only when lossless[i] == 0 */
  int lossless[3];
  double weighted_psnr;  /* (14 Y + Cb + Cr) / 16; valid when weighted_valid */
  int weighted_valid;
} ccso_quality_report;

CCSO_API ccso_status ccso_quality(const ccso_frame* orig, const ccso_frame* test,
                                  ccso_quality_report* report);

CCSO_API ccso_status ccso_bd_rate(const double* anchor_rate,
                                  const double* anchor_quality, size_t anchor_count,
                                  const double* test_rate, const double* test_quality,
                                  size_t test_count, double* percent);

typedef struct ccso_bd_rate_summary {
  double plane[3];
  double ycbcr;
} ccso_bd_rate_summary;

/* CSV columns: bitrate_kbps,psnr_y,psnr_cb,psnr_cr (header row optional). */
CCSO_API ccso_status ccso_bd_rate_csv(const char* anchor_path, const char* test_path,
                                      ccso_bd_rate_summary* summary);

/* ---- degradation ---- */

/* Profile grammar: step (';' step)*, step = kind '=' int ['@' planes];
 * kind in bias|noise|blockmean, planes a comma list of y,cb,cr. */
CCSO_API ccso_status ccso_degrade(const ccso_frame* frame, const char* profile,
                                  uint64_t seed, ccso_frame** out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CCSO_CCSO_H_ */
