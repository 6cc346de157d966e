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

#include "ccso/ccso.h"

#include <fstream>
#include <iterator>
#include <new>
#include <string>
#include <vector>

#include "ccso/classifier.h"
#include "ccso/degrade.h"
#include "ccso/error.h"
#include "ccso/frame.h"
#include "ccso/metrics.h"
#include "ccso/pipeline.h"
#include "ccso/search.h"
#include "ccso/syntax.h"
#include "ccso/yuv_io.h"

struct ccso_frame {
  ccso::Frame frame;
};

struct ccso_params {
  ccso::CcsoFrameParams params;
};

struct ccso_params_file {
  ccso::ParamsFile file;
};

namespace {

thread_local std::string g_last_error;
thread_local int64_t g_last_bit_offset = -1;

void ClearError() {
  g_last_error.clear();
  g_last_bit_offset = -1;
}

ccso_status Fail(ccso_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

ccso_status StatusFor(ccso::ErrorCode code) {
  switch (code) {
    case ccso::ErrorCode::kInvalidArgument:
    case ccso::ErrorCode::kConfig:
      return CCSO_ERROR_INVALID_ARGUMENT;
    case ccso::ErrorCode::kDimensionMismatch:
    case ccso::ErrorCode::kInput:
      return CCSO_ERROR_INPUT;
    case ccso::ErrorCode::kOutput:
      return CCSO_ERROR_OUTPUT;
    case ccso::ErrorCode::kParse:
      return CCSO_ERROR_PARSE;
  }
  return CCSO_ERROR_INTERNAL;
}

// Runs |fn| and turns exceptions into status codes.
template <typename Fn>
ccso_status Guard(Fn&& fn) {
  ClearError();
  try {
    fn();
    return CCSO_OK;
  } catch (const ccso::ParseError& e) {
    g_last_bit_offset = static_cast<int64_t>(e.bit_offset());
    return Fail(CCSO_ERROR_PARSE, e.what());
  } catch (const ccso::Error& e) {
    return Fail(StatusFor(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CCSO_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CCSO_ERROR_INTERNAL, e.what());
  }
}

#define CCSO_REQUIRE(cond)                                            \
  do {                                                                \
    if (!(cond)) {                                                    \
      return Fail(CCSO_ERROR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
    }                                                                 \
  } while (0)

bool ValidPlane(ccso_plane plane) {
  return plane == CCSO_PLANE_Y || plane == CCSO_PLANE_CB || plane == CCSO_PLANE_CR;
}

ccso::PlaneId ToPlane(ccso_plane plane) {
  return static_cast<ccso::PlaneId>(plane);
}

ccso::SweepOptions ToSweep(const ccso_search_options& o) {
  ccso::SweepOptions sweep;
  sweep.combined = o.sweep_combined != 0;
  sweep.bo_only = o.sweep_bo_only != 0;
  auto bits = [](unsigned mask, int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
      if (mask & (1u << i)) out.push_back(i);
    }
    return out;
  };
  sweep.shapes = bits(o.shape_mask, ccso::kNumFilterShapes);
  sweep.quant_steps = bits(o.quant_step_mask, ccso::kNumQuantSteps);
  sweep.combined_band_log2 = bits(o.combined_band_mask, ccso::kMaxBandLog2Combined + 1);
  sweep.edge_clfs.clear();
  for (int clf : bits(o.edge_clf_mask, 2)) {
    sweep.edge_clfs.push_back(static_cast<ccso::EdgeClf>(clf));
  }
  sweep.bo_band_log2 = bits(o.bo_band_mask, ccso::kMaxBandLog2BoOnly + 1);
  return sweep;
}

std::vector<uint8_t> ReadFileBytes(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ccso::Error(ccso::ErrorCode::kInput,
                      std::string("cannot open '") + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

extern "C" {

const char* ccso_version(void) { return "1.0.0"; }

const char* ccso_last_error_message(void) { return g_last_error.c_str(); }

int64_t ccso_last_error_bit_offset(void) { return g_last_bit_offset; }

ccso_status ccso_frame_create(int width, int height, int bit_depth,
                              ccso_frame** out) {
  CCSO_REQUIRE(out != nullptr);
  return Guard([&] { *out = new ccso_frame{ccso::Frame(width, height, bit_depth)}; });
}

ccso_status ccso_frame_clone(const ccso_frame* frame, ccso_frame** out) {
  CCSO_REQUIRE(frame != nullptr && out != nullptr);
  return Guard([&] { *out = new ccso_frame{frame->frame}; });
}

void ccso_frame_destroy(ccso_frame* frame) { delete frame; }

int ccso_frame_width(const ccso_frame* frame) {
  return frame ? frame->frame.width() : 0;
}

int ccso_frame_height(const ccso_frame* frame) {
  return frame ? frame->frame.height() : 0;
}

int ccso_frame_bit_depth(const ccso_frame* frame) {
  return frame ? frame->frame.bit_depth() : 0;
}

int ccso_frame_plane_width(const ccso_frame* frame, ccso_plane plane) {
  if (!frame || !ValidPlane(plane)) return 0;
  return frame->frame.plane(ToPlane(plane)).width();
}

int ccso_frame_plane_height(const ccso_frame* frame, ccso_plane plane) {
  if (!frame || !ValidPlane(plane)) return 0;
  return frame->frame.plane(ToPlane(plane)).height();
}

ccso_status ccso_frame_get_sample(const ccso_frame* frame, ccso_plane plane, int y,
                                  int x, uint16_t* value) {
  CCSO_REQUIRE(frame != nullptr && value != nullptr && ValidPlane(plane));
  const ccso::Plane& p = frame->frame.plane(ToPlane(plane));
  CCSO_REQUIRE(y >= 0 && x >= 0 && y < p.height() && x < p.width());
  *value = p.at(y, x);
  return CCSO_OK;
}

ccso_status ccso_frame_set_sample(ccso_frame* frame, ccso_plane plane, int y, int x,
                                  uint16_t value) {
  CCSO_REQUIRE(frame != nullptr && ValidPlane(plane));
  ccso::Plane& p = frame->frame.plane(ToPlane(plane));
  CCSO_REQUIRE(y >= 0 && x >= 0 && y < p.height() && x < p.width());
  CCSO_REQUIRE(value <= frame->frame.max_value());
  p.set(y, x, value);
  return CCSO_OK;
}

int ccso_frame_equal(const ccso_frame* a, const ccso_frame* b) {
  if (!a || !b) return 0;
  return a->frame == b->frame ? 1 : 0;
}

size_t ccso_raw_frame_bytes(int width, int height, int bit_depth) {
  if (width <= 0 || height <= 0 || !ccso::IsSupportedBitDepth(bit_depth)) return 0;
  return ccso::RawFrameBytes(width, height, bit_depth);
}

ccso_status ccso_raw_file_frame_count(const char* path, int width, int height,
                                      int bit_depth, size_t* count) {
  CCSO_REQUIRE(path != nullptr && count != nullptr);
  return Guard([&] {
    const ccso::RawYuvReader reader(path, width, height, bit_depth);
    *count = reader.frame_count();
  });
}

ccso_status ccso_frame_read_raw(const char* path, int width, int height,
                                int bit_depth, size_t frame_index, ccso_frame** out) {
  CCSO_REQUIRE(path != nullptr && out != nullptr);
  return Guard([&] {
    ccso::RawYuvReader reader(path, width, height, bit_depth);
    *out = new ccso_frame{reader.Read(frame_index)};
  });
}

ccso_status ccso_frames_write_raw(const char* path, const ccso_frame* const* frames,
                                  size_t count) {
  CCSO_REQUIRE(path != nullptr && (frames != nullptr || count == 0));
  for (size_t i = 0; i < count; ++i) CCSO_REQUIRE(frames[i] != nullptr);
  return Guard([&] {
    std::vector<ccso::Frame> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) list.push_back(frames[i]->frame);
    ccso::WriteRawFrames(path, list);
  });
}

void ccso_params_destroy(ccso_params* params) { delete params; }

int ccso_params_frame_flag(const ccso_params* params) {
  return params && params->params.frame_flag ? 1 : 0;
}

ccso_status ccso_params_plane_info(const ccso_params* params, ccso_plane plane,
                                   ccso_plane_info* info) {
  CCSO_REQUIRE(params != nullptr && info != nullptr && ValidPlane(plane));
  const ccso::CcsoPlaneParams& p = params->params.plane(ToPlane(plane));
  info->enable = p.enable;
  info->bo_only = p.bo_only;
  info->max_band_log2 = p.max_band_log2;
  info->quant_step_idx = p.quant_step_idx;
  info->filter_shape_idx = p.filter_shape_idx;
  info->edge_clf = static_cast<int>(p.edge_clf);
  info->lut_size = p.lut.size();
  info->unit_count = static_cast<int>(p.unit_flags.size());
  info->units_enabled = 0;
  for (uint8_t f : p.unit_flags) info->units_enabled += f;
  return CCSO_OK;
}

ccso_status ccso_params_lut_entry(const ccso_params* params, ccso_plane plane,
                                  int index, int* offset) {
  CCSO_REQUIRE(params != nullptr && offset != nullptr && ValidPlane(plane));
  const ccso::OffsetLut& lut = params->params.plane(ToPlane(plane)).lut;
  CCSO_REQUIRE(index >= 0 && index < lut.size());
  *offset = lut[index];
  return CCSO_OK;
}

ccso_status ccso_params_bit_cost(const ccso_params* params, int width, int height,
                                 size_t* bits) {
  CCSO_REQUIRE(params != nullptr && bits != nullptr);
  return Guard([&] {
    const ccso::FrameGeometry geometry{width, height};
    ccso::ValidateParams(params->params, geometry);
    *bits = ccso::ParamsBitCost(params->params, geometry);
  });
}

ccso_status ccso_params_encode(const ccso_params* params, int width, int height,
                               uint8_t* buffer, size_t capacity, size_t* size) {
  CCSO_REQUIRE(params != nullptr && size != nullptr);
  return Guard([&] {
    const std::vector<uint8_t> bytes =
        ccso::WriteParams(params->params, ccso::FrameGeometry{width, height});
    *size = bytes.size();
    if (buffer == nullptr) return;
    if (capacity < bytes.size()) {
      throw ccso::Error(ccso::ErrorCode::kOutput,
                        "buffer holds " + std::to_string(capacity) +
                            " bytes, payload needs " + std::to_string(bytes.size()));
    }
    std::copy(bytes.begin(), bytes.end(), buffer);
  });
}

ccso_status ccso_params_decode(const uint8_t* buffer, size_t size, int width,
                               int height, ccso_params** out) {
  CCSO_REQUIRE((buffer != nullptr || size == 0) && out != nullptr);
  return Guard([&] {
    *out = new ccso_params{ccso::ReadParams(std::span<const uint8_t>(buffer, size),
                                            ccso::FrameGeometry{width, height})};
  });
}

ccso_status ccso_params_file_create(int width, int height, int bit_depth,
                                    ccso_params_file** out) {
  CCSO_REQUIRE(out != nullptr);
  CCSO_REQUIRE(width > 0 && height > 0 && width <= 65535 && height <= 65535);
  CCSO_REQUIRE(ccso::IsSupportedBitDepth(bit_depth));
  return Guard([&] {
    auto* file = new ccso_params_file{};
    file->file.geometry = {width, height};
    file->file.bit_depth = bit_depth;
    *out = file;
  });
}

void ccso_params_file_destroy(ccso_params_file* file) { delete file; }

ccso_status ccso_params_file_read(const char* path, ccso_params_file** out) {
  CCSO_REQUIRE(path != nullptr && out != nullptr);
  return Guard([&] {
    const std::vector<uint8_t> bytes = ReadFileBytes(path);
    *out = new ccso_params_file{ccso::DecodeParamsFile(bytes)};
  });
}

ccso_status ccso_params_file_write(const ccso_params_file* file, const char* path) {
  CCSO_REQUIRE(file != nullptr && path != nullptr);
  return Guard([&] {
    const std::vector<uint8_t> bytes = ccso::EncodeParamsFile(file->file);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ccso::Error(ccso::ErrorCode::kOutput,
                        std::string("cannot write '") + path + "'");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      throw ccso::Error(ccso::ErrorCode::kOutput,
                        std::string("write to '") + path + "' failed");
    }
  });
}

int ccso_params_file_width(const ccso_params_file* file) {
  return file ? file->file.geometry.width : 0;
}

int ccso_params_file_height(const ccso_params_file* file) {
  return file ? file->file.geometry.height : 0;
}

int ccso_params_file_bit_depth(const ccso_params_file* file) {
  return file ? file->file.bit_depth : 0;
}

size_t ccso_params_file_frame_count(const ccso_params_file* file) {
  return file ? file->file.frames.size() : 0;
}

ccso_status ccso_params_file_append(ccso_params_file* file, uint32_t frame_index,
                                    const ccso_params* params) {
  CCSO_REQUIRE(file != nullptr && params != nullptr);
  return Guard([&] {
    ccso::ValidateParams(params->params, file->file.geometry);
    file->file.frames.push_back({frame_index, params->params});
  });
}

ccso_status ccso_params_file_get(const ccso_params_file* file, size_t i,
                                 uint32_t* frame_index, ccso_params** out) {
  CCSO_REQUIRE(file != nullptr && out != nullptr);
  CCSO_REQUIRE(i < file->file.frames.size());
  return Guard([&] {
    const ccso::ParamsFileEntry& entry = file->file.frames[i];
    if (frame_index) *frame_index = entry.frame_index;
    *out = new ccso_params{entry.params};
  });
}

void ccso_search_options_default(ccso_search_options* options) {
  if (!options) return;
  options->lambda = 0.0;
  options->max_iterations = 15;
  options->plane_mask = CCSO_PLANE_MASK_ALL;
  options->sweep_combined = 1;
  options->sweep_bo_only = 1;
  options->shape_mask = 0x3f;
  options->quant_step_mask = 0xf;
  options->combined_band_mask = 0xf;
  options->edge_clf_mask = 0x3;
  options->bo_band_mask = 0xff;
}

ccso_status ccso_search(const ccso_frame* orig, const ccso_frame* recon,
                        const ccso_frame* classification,
                        const ccso_search_options* options, ccso_params** out_params,
                        ccso_search_stats* stats) {
  CCSO_REQUIRE(orig != nullptr && recon != nullptr && out_params != nullptr);
  ccso_search_options opts;
  ccso_search_options_default(&opts);
  if (options) opts = *options;
  return Guard([&] {
    ccso::RdConfig rd;
    rd.lambda = opts.lambda;
    rd.max_iterations = opts.max_iterations;
    ccso::PlaneMask mask;
    for (int p = 0; p < ccso::kNumPlanes; ++p) {
      mask.planes[p] = (opts.plane_mask >> p) & 1u;
    }
    const ccso::Frame& cls = classification ? classification->frame : recon->frame;
    ccso::SearchResult result =
        ccso::SearchFrame(orig->frame, recon->frame, cls, mask, rd, ToSweep(opts));
    if (stats) {
      for (int p = 0; p < ccso::kNumPlanes; ++p) {
        stats->pre_sse[p] = result.pre_sse[p];
        stats->post_sse[p] = result.post_sse[p];
        stats->iterations[p] = result.iterations[p];
      }
      stats->total_cost = result.total_cost;
    }
    *out_params = new ccso_params{std::move(result.params)};
  });
}

ccso_status ccso_apply(const ccso_frame* recon, const ccso_frame* classification,
                       const ccso_params* params, ccso_filter_path path,
                       ccso_frame** out) {
  CCSO_REQUIRE(recon != nullptr && params != nullptr && out != nullptr);
  CCSO_REQUIRE(path == CCSO_FILTER_BATCH || path == CCSO_FILTER_SCALAR);
  return Guard([&] {
    const ccso::Frame& cls = classification ? classification->frame : recon->frame;
    *out = new ccso_frame{ccso::ApplyParams(
        recon->frame, cls, params->params,
        path == CCSO_FILTER_SCALAR ? ccso::FilterPath::kScalar
                                   : ccso::FilterPath::kBatch)};
  });
}

ccso_status ccso_quality(const ccso_frame* orig, const ccso_frame* test,
                         ccso_quality_report* report) {
  CCSO_REQUIRE(orig != nullptr && test != nullptr && report != nullptr);
  return Guard([&] {
    const ccso::QualityReport q = ccso::PsnrReport(orig->frame, test->frame);
    for (int p = 0; p < ccso::kNumPlanes; ++p) {
      report->sse[p] = q.planes[p].sse;
      report->mse[p] = q.planes[p].mse;
      report->lossless[p] = q.planes[p].lossless() ? 1 : 0;
      report->psnr[p] = q.planes[p].psnr.value_or(0.0);
    }
    report->weighted_valid = q.weighted_psnr.has_value() ? 1 : 0;
    report->weighted_psnr = q.weighted_psnr.value_or(0.0);
  });
}

ccso_status ccso_bd_rate(const double* anchor_rate, const double* anchor_quality,
                         size_t anchor_count, const double* test_rate,
                         const double* test_quality, size_t test_count,
                         double* percent) {
  CCSO_REQUIRE(anchor_rate && anchor_quality && test_rate && test_quality && percent);
  return Guard([&] {
    std::vector<ccso::RdPoint> a, t;
    for (size_t i = 0; i < anchor_count; ++i) a.push_back({anchor_rate[i], anchor_quality[i]});
    for (size_t i = 0; i < test_count; ++i) t.push_back({test_rate[i], test_quality[i]});
    *percent = ccso::BdRate(a, t);
  });
}

ccso_status ccso_bd_rate_csv(const char* anchor_path, const char* test_path,
                             ccso_bd_rate_summary* summary) {
  CCSO_REQUIRE(anchor_path != nullptr && test_path != nullptr && summary != nullptr);
  return Guard([&] {
    auto load = [](const char* path) {
      std::ifstream in(path);
      if (!in) {
        throw ccso::Error(ccso::ErrorCode::kInput,
                          std::string("cannot open '") + path + "'");
      }
      return ccso::ParseRdCsv(in);
    };
    const auto anchor = load(anchor_path);
    const auto test = load(test_path);
    ccso::BdRateSummary s;
    try {
      s = ccso::BdRateFromRows(anchor, test);
    } catch (const ccso::Error& e) {
      // Structurally valid CSV whose curves are unusable.
      throw ccso::Error(ccso::ErrorCode::kParse, e.what());
    }
    for (int p = 0; p < ccso::kNumPlanes; ++p) summary->plane[p] = s.planes[p];
    summary->ycbcr = s.ycbcr;
  });
}

ccso_status ccso_degrade(const ccso_frame* frame, const char* profile, uint64_t seed,
                         ccso_frame** out) {
  CCSO_REQUIRE(frame != nullptr && profile != nullptr && out != nullptr);
  return Guard([&] {
    const ccso::DegradationProfile parsed = ccso::DegradationProfile::Parse(profile);
    *out = new ccso_frame{ccso::Degrade(frame->frame, parsed, seed)};
  });
}

}  // extern "C"
