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

// ccso: search, apply, measure and degrade raw 4:2:0 frames through the C
// API of libccso.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccso/ccso.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitOutput = 3;
constexpr int kExitParse = 4;

struct FrameDeleter {
  void operator()(ccso_frame* f) const { ccso_frame_destroy(f); }
};
struct ParamsDeleter {
  void operator()(ccso_params* p) const { ccso_params_destroy(p); }
};
struct ParamsFileDeleter {
  void operator()(ccso_params_file* f) const { ccso_params_file_destroy(f); }
};
using FramePtr = std::unique_ptr<ccso_frame, FrameDeleter>;
using ParamsPtr = std::unique_ptr<ccso_params, ParamsDeleter>;
using ParamsFilePtr = std::unique_ptr<ccso_params_file, ParamsFileDeleter>;

// Carries a failed C call out to the command driver.
struct CommandError {
  int exit_code;
  std::string message;
};

int ExitCodeFor(ccso_status status) {
  switch (status) {
    case CCSO_OK:
      return kExitOk;
    case CCSO_ERROR_OUTPUT:
      return kExitOutput;
    case CCSO_ERROR_PARSE:
      return kExitParse;
    case CCSO_ERROR_INTERNAL:
      return 1;
    default:
      return kExitInput;
  }
}

void Check(ccso_status status, const std::string& context) {
  if (status == CCSO_OK) return;
  throw CommandError{ExitCodeFor(status),
                     context + ": " + ccso_last_error_message()};
}

constexpr const char* kPlaneKeys[3] = {"y", "cb", "cr"};
constexpr const char* kPlaneLabels[3] = {"Y", "Cb", "Cr"};

std::string FormatPsnr(int lossless, double psnr) {
  if (lossless) return "lossless";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", psnr);
  return buf;
}

std::string FormatWeighted(const ccso_quality_report& q) {
  return q.weighted_valid ? FormatPsnr(0, q.weighted_psnr) : "lossless";
}

std::string FormatPercent(double v) {
  if (std::fabs(v) < 0.005) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", v);
  return buf;
}

struct Geometry {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
};

void AddGeometry(CLI::App* cmd, Geometry& g) {
  cmd->add_option("--width", g.width, "Luma width")->required();
  cmd->add_option("--height", g.height, "Luma height")->required();
  cmd->add_option("--bit-depth", g.bit_depth, "Bits per sample")
      ->check(CLI::IsMember({8, 10}))
      ->capture_default_str();
}

size_t FrameCount(const std::string& path, const Geometry& g) {
  size_t count = 0;
  Check(ccso_raw_file_frame_count(path.c_str(), g.width, g.height, g.bit_depth,
                                  &count),
        "reading '" + path + "'");
  return count;
}

FramePtr ReadFrame(const std::string& path, const Geometry& g, size_t index) {
  ccso_frame* f = nullptr;
  Check(ccso_frame_read_raw(path.c_str(), g.width, g.height, g.bit_depth, index, &f),
        "reading frame " + std::to_string(index) + " of '" + path + "'");
  return FramePtr(f);
}

void WriteFrames(const std::string& path, const std::vector<FramePtr>& frames) {
  std::vector<const ccso_frame*> raw;
  for (const FramePtr& f : frames) raw.push_back(f.get());
  Check(ccso_frames_write_raw(path.c_str(), raw.data(), raw.size()),
        "writing '" + path + "'");
}

void RequireSameCount(size_t expected, size_t got, const std::string& path) {
  if (expected != got) {
    throw CommandError{kExitInput, "'" + path + "' has " + std::to_string(got) +
                                       " frames, expected " +
                                       std::to_string(expected)};
  }
}

ccso_quality_report Quality(const ccso_frame* orig, const ccso_frame* test) {
  ccso_quality_report q{};
  Check(ccso_quality(orig, test, &q), "measuring quality");
  return q;
}

// key=value lines, written only once the command has succeeded.
class KeyValueReport {
 public:
  void Add(const std::string& key, const std::string& value) {
    out_ << key << '=' << value << '\n';
  }
  void Write(const std::string& path) const {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw CommandError{kExitOutput, "cannot write report '" + path + "'"};
    f << out_.str();
    f.flush();
    if (!f) throw CommandError{kExitOutput, "write to '" + path + "' failed"};
  }

 private:
  std::ostringstream out_;
};

unsigned ParsePlaneMask(const std::string& text) {
  unsigned mask = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "y") {
      mask |= CCSO_PLANE_MASK_Y;
    } else if (item == "cb") {
      mask |= CCSO_PLANE_MASK_CB;
    } else if (item == "cr") {
      mask |= CCSO_PLANE_MASK_CR;
    } else {
      throw CommandError{kExitInput, "unknown plane '" + item + "'"};
    }
  }
  return mask;
}

unsigned ToMask(const std::vector<int>& values, int limit, const char* what) {
  unsigned mask = 0;
  for (int v : values) {
    if (v < 0 || v >= limit) {
      throw CommandError{kExitInput, std::string(what) + " value " +
                                         std::to_string(v) + " out of range"};
    }
    mask |= 1u << v;
  }
  return mask;
}

struct SearchArgs {
  std::string orig, recon, classify, out_params, report;
  Geometry geometry;
  std::string planes = "y,cb,cr";
  double lambda = 0.0;
  int max_iterations = 15;
  std::string mode = "all";
  std::vector<int> shapes, quant_steps, bands, bo_bands, edge_clfs;
};

int RunSearch(const SearchArgs& a) {
  const Geometry& g = a.geometry;
  ccso_search_options opts;
  ccso_search_options_default(&opts);
  opts.lambda = a.lambda;
  opts.max_iterations = a.max_iterations;
  opts.plane_mask = ParsePlaneMask(a.planes);
  opts.sweep_combined = a.mode != "bo";
  opts.sweep_bo_only = a.mode != "combined";
  if (!a.shapes.empty()) opts.shape_mask = ToMask(a.shapes, 6, "shape");
  if (!a.quant_steps.empty()) opts.quant_step_mask = ToMask(a.quant_steps, 4, "quant step");
  if (!a.bands.empty()) opts.combined_band_mask = ToMask(a.bands, 4, "band");
  if (!a.bo_bands.empty()) opts.bo_band_mask = ToMask(a.bo_bands, 8, "band-only band");
  if (!a.edge_clfs.empty()) opts.edge_clf_mask = ToMask(a.edge_clfs, 2, "edge classifier");

  const size_t frames = FrameCount(a.orig, g);
  RequireSameCount(frames, FrameCount(a.recon, g), a.recon);
  if (!a.classify.empty()) RequireSameCount(frames, FrameCount(a.classify, g), a.classify);

  ccso_params_file* raw_file = nullptr;
  Check(ccso_params_file_create(g.width, g.height, g.bit_depth, &raw_file),
        "creating parameter file");
  ParamsFilePtr file(raw_file);
  KeyValueReport report;
  for (size_t i = 0; i < frames; ++i) {
    FramePtr orig = ReadFrame(a.orig, g, i);
    FramePtr recon = ReadFrame(a.recon, g, i);
    FramePtr cls = a.classify.empty() ? nullptr : ReadFrame(a.classify, g, i);
    ccso_params* raw_params = nullptr;
    ccso_search_stats stats{};
    Check(ccso_search(orig.get(), recon.get(), cls.get(), &opts, &raw_params, &stats),
          "searching frame " + std::to_string(i));
    ParamsPtr params(raw_params);
    Check(ccso_params_file_append(file.get(), static_cast<uint32_t>(i), params.get()),
          "storing parameters");

    ccso_frame* raw_filtered = nullptr;
    Check(ccso_apply(recon.get(), cls.get(), params.get(), CCSO_FILTER_BATCH,
                     &raw_filtered),
          "filtering frame " + std::to_string(i));
    FramePtr filtered(raw_filtered);
    const ccso_quality_report pre = Quality(orig.get(), recon.get());
    const ccso_quality_report post = Quality(orig.get(), filtered.get());

    const std::string prefix = "frame." + std::to_string(i) + ".";
    std::cout << "frame " << i << ":";
    for (int p = 0; p < 3; ++p) {
      ccso_plane_info info{};
      Check(ccso_params_plane_info(params.get(), static_cast<ccso_plane>(p), &info),
            "reading parameters");
      const std::string pre_s = FormatPsnr(pre.lossless[p], pre.psnr[p]);
      const std::string post_s = FormatPsnr(post.lossless[p], post.psnr[p]);
      std::cout << " " << kPlaneLabels[p] << " " << pre_s << " -> " << post_s
                << (info.enable ? "" : " (off)") << ";";
      const std::string key = prefix + kPlaneKeys[p] + ".";
      report.Add(key + "enabled", std::to_string(info.enable));
      report.Add(key + "units_enabled", std::to_string(info.units_enabled));
      report.Add(key + "pre_psnr", pre_s);
      report.Add(key + "post_psnr", post_s);
      report.Add(key + "pre_sse", std::to_string(pre.sse[p]));
      report.Add(key + "post_sse", std::to_string(post.sse[p]));
    }
    std::cout << " YCbCr " << FormatWeighted(pre) << " -> " << FormatWeighted(post)
              << "\n";
    report.Add(prefix + "ycbcr.pre_psnr", FormatWeighted(pre));
    report.Add(prefix + "ycbcr.post_psnr", FormatWeighted(post));
    report.Add(prefix + "frame_flag", std::to_string(ccso_params_frame_flag(params.get())));
    size_t bits = 0;
    Check(ccso_params_bit_cost(params.get(), g.width, g.height, &bits), "costing");
    report.Add(prefix + "param_bits", std::to_string(bits));
  }
  Check(ccso_params_file_write(file.get(), a.out_params.c_str()),
        "writing '" + a.out_params + "'");
  if (!a.report.empty()) report.Write(a.report);
  return kExitOk;
}

struct ApplyArgs {
  std::string recon, classify, params, out, path = "batch";
  Geometry geometry;
};

int RunApply(const ApplyArgs& a) {
  const Geometry& g = a.geometry;
  ccso_params_file* raw_file = nullptr;
  const ccso_status st = ccso_params_file_read(a.params.c_str(), &raw_file);
  if (st == CCSO_ERROR_PARSE) {
    throw CommandError{kExitParse,
                       "'" + a.params + "': " + ccso_last_error_message()};
  }
  Check(st, "reading '" + a.params + "'");
  ParamsFilePtr file(raw_file);
  if (ccso_params_file_width(file.get()) != g.width ||
      ccso_params_file_height(file.get()) != g.height ||
      ccso_params_file_bit_depth(file.get()) != g.bit_depth) {
    throw CommandError{
        kExitInput,
        "parameter file is for " + std::to_string(ccso_params_file_width(file.get())) +
            "x" + std::to_string(ccso_params_file_height(file.get())) + " " +
            std::to_string(ccso_params_file_bit_depth(file.get())) +
            "-bit frames, flags give " + std::to_string(g.width) + "x" +
            std::to_string(g.height) + " " + std::to_string(g.bit_depth) + "-bit"};
  }
  const size_t frames = FrameCount(a.recon, g);
  if (!a.classify.empty()) RequireSameCount(frames, FrameCount(a.classify, g), a.classify);

  std::vector<ParamsPtr> by_frame(frames);
  for (size_t i = 0; i < ccso_params_file_frame_count(file.get()); ++i) {
    uint32_t index = 0;
    ccso_params* p = nullptr;
    Check(ccso_params_file_get(file.get(), i, &index, &p), "reading parameters");
    ParamsPtr owned(p);
    if (index >= frames) {
      throw CommandError{kExitInput, "parameters for frame " + std::to_string(index) +
                                         " but input has " + std::to_string(frames) +
                                         " frames"};
    }
    by_frame[index] = std::move(owned);
  }
  const ccso_filter_path path =
      a.path == "scalar" ? CCSO_FILTER_SCALAR : CCSO_FILTER_BATCH;
  std::vector<FramePtr> outputs;
  for (size_t i = 0; i < frames; ++i) {
    FramePtr recon = ReadFrame(a.recon, g, i);
    if (!by_frame[i]) {
      throw CommandError{kExitInput, "no parameters for frame " + std::to_string(i)};
    }
    FramePtr cls = a.classify.empty() ? nullptr : ReadFrame(a.classify, g, i);
    ccso_frame* out = nullptr;
    Check(ccso_apply(recon.get(), cls.get(), by_frame[i].get(), path, &out),
          "filtering frame " + std::to_string(i));
    outputs.emplace_back(out);
  }
  WriteFrames(a.out, outputs);
  return kExitOk;
}

struct MetricsArgs {
  std::string orig, test, report;
  Geometry geometry;
};

int RunMetrics(const MetricsArgs& a) {
  const Geometry& g = a.geometry;
  const size_t frames = FrameCount(a.orig, g);
  RequireSameCount(frames, FrameCount(a.test, g), a.test);
  KeyValueReport report;
  for (size_t i = 0; i < frames; ++i) {
    FramePtr orig = ReadFrame(a.orig, g, i);
    FramePtr test = ReadFrame(a.test, g, i);
    const ccso_quality_report q = Quality(orig.get(), test.get());
    const std::string prefix = "frame." + std::to_string(i) + ".";
    std::cout << "frame " << i << ":";
    for (int p = 0; p < 3; ++p) {
      const std::string psnr = FormatPsnr(q.lossless[p], q.psnr[p]);
      char mse[32];
      std::snprintf(mse, sizeof(mse), "%.6f", q.mse[p]);
      std::cout << " " << kPlaneLabels[p] << " " << psnr << (q.lossless[p] ? "" : " dB")
                << " (MSE " << mse << ");";
      const std::string key = prefix + kPlaneKeys[p] + ".";
      report.Add(key + "sse", std::to_string(q.sse[p]));
      report.Add(key + "mse", mse);
      report.Add(key + "psnr", psnr);
    }
    std::cout << " YCbCr " << FormatWeighted(q) << "\n";
    report.Add(prefix + "ycbcr.psnr", FormatWeighted(q));
  }
  if (!a.report.empty()) report.Write(a.report);
  return kExitOk;
}

struct BdRateArgs {
  std::string anchor_csv, test_csv;
};

int RunBdRate(const BdRateArgs& a) {
  ccso_bd_rate_summary s{};
  Check(ccso_bd_rate_csv(a.anchor_csv.c_str(), a.test_csv.c_str(), &s), "BD-rate");
  for (int p = 0; p < 3; ++p) {
    std::cout << "BD-rate " << kPlaneLabels[p] << ": " << FormatPercent(s.plane[p]) << "\n";
  }
  std::cout << "BD-rate: " << FormatPercent(s.ycbcr) << "\n";
  return kExitOk;
}

struct DegradeArgs {
  std::string in, profile, out;
  uint64_t seed = 0;
  Geometry geometry;
};

int RunDegrade(const DegradeArgs& a) {
  const Geometry& g = a.geometry;
  const size_t frames = FrameCount(a.in, g);
  std::vector<FramePtr> outputs;
  for (size_t i = 0; i < frames; ++i) {
    FramePtr in = ReadFrame(a.in, g, i);
    ccso_frame* out = nullptr;
    // Per-frame seeds keep frames independent but reproducible.
    Check(ccso_degrade(in.get(), a.profile.c_str(), a.seed + i, &out),
          "degrading frame " + std::to_string(i));
    outputs.emplace_back(out);
  }
  WriteFrames(a.out, outputs);
  return kExitOk;
}

int Run(std::vector<std::string> args);

void WriteManifest(const std::string& path, const std::vector<std::string>& args,
                   uint64_t seed) {
  static const std::vector<std::string> kInputFlags = {
      "--orig", "--recon", "--classify", "--params", "--in", "--test",
      "--anchor-csv", "--test-csv"};
  static const std::vector<std::string> kGeometryFlags = {"--width", "--height",
                                                          "--bit-depth"};
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  std::vector<std::string> replay;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--manifest") {
      ++i;
      continue;
    }
    if (args[i].rfind("--manifest=", 0) == 0) continue;
    replay.push_back(args[i]);
  }
  nlohmann::json manifest;
  manifest["tool"] = "ccso";
  manifest["version"] = ccso_version();
  manifest["command"] = replay.empty() ? "" : replay.front();
  manifest["inputs"] = nlohmann::json::object();
  manifest["geometry"] = nlohmann::json::object();
  manifest["options"] = nlohmann::json::object();
  for (size_t i = 1; i < replay.size(); ++i) {
    const std::string& flag = replay[i];
    if (flag.rfind("--", 0) != 0) continue;
    const bool has_value = i + 1 < replay.size() && replay[i + 1].rfind("--", 0) != 0;
    const std::string value = has_value ? replay[i + 1] : "true";
    const std::string key = flag.substr(2);
    if (contains(kInputFlags, flag)) {
      manifest["inputs"][key] = value;
    } else if (contains(kGeometryFlags, flag)) {
      manifest["geometry"][key] = value;
    } else {
      manifest["options"][key] = value;
    }
  }
  if (manifest["command"] == "degrade") {
    manifest["seed"] = seed;
  } else {
    manifest["seed"] = nullptr;
  }
  manifest["args"] = replay;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw CommandError{kExitOutput, "cannot write manifest '" + path + "'"};
  f << manifest.dump(2) << "\n";
  if (!f) throw CommandError{kExitOutput, "write to '" + path + "' failed"};
}

int RunReplay(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CommandError{kExitInput, "cannot open manifest '" + path + "'"};
  nlohmann::json manifest;
  try {
    f >> manifest;
    std::vector<std::string> args = manifest.at("args").get<std::vector<std::string>>();
    if (args.empty() || args.front() == "replay") {
      throw CommandError{kExitParse, "manifest '" + path + "' has no replayable command"};
    }
    return Run(std::move(args));
  } catch (const nlohmann::json::exception& e) {
    throw CommandError{kExitParse, "malformed manifest '" + path + "': " + e.what()};
  }
}

int Run(std::vector<std::string> args) {
  CLI::App app{"Cross-component sample offset filter tool", "ccso"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ccso_version()));
  std::string manifest;

  SearchArgs search;
  CLI::App* s = app.add_subcommand("search", "Derive filter parameters per frame");
  s->add_option("--orig", search.orig, "Original raw YUV")->required();
  s->add_option("--recon", search.recon, "Reconstructed raw YUV to filter")->required();
  s->add_option("--classify", search.classify, "Raw YUV to classify from (default: recon)");
  AddGeometry(s, search.geometry);
  s->add_option("--planes", search.planes, "Planes to search, e.g. y,cb,cr")
      ->capture_default_str();
  s->add_option("--lambda", search.lambda, "R-D multiplier (squared error per bit)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s->add_option("--max-iterations", search.max_iterations, "Iterations per combination")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--mode", search.mode, "Classifier modes to sweep")
      ->check(CLI::IsMember({"all", "combined", "bo"}))
      ->capture_default_str();
  s->add_option("--shapes", search.shapes, "Filter shapes to sweep (0-5)")->delimiter(',');
  s->add_option("--quant-steps", search.quant_steps, "quant_step_idx values (0-3)")
      ->delimiter(',');
  s->add_option("--bands", search.bands, "Combined-mode max_band_log2 values (0-3)")
      ->delimiter(',');
  s->add_option("--bo-bands", search.bo_bands, "Band-only max_band_log2 values (0-7)")
      ->delimiter(',');
  s->add_option("--edge-clfs", search.edge_clfs, "edge_clf values (0-1)")->delimiter(',');
  s->add_option("--out-params", search.out_params, "Output .ccso file")->required();
  s->add_option("--report", search.report, "key=value report file");
  s->add_option("--manifest", manifest, "Write a replayable run manifest");

  ApplyArgs apply;
  CLI::App* ap = app.add_subcommand("apply", "Filter frames with a .ccso file");
  ap->add_option("--recon", apply.recon, "Raw YUV to filter")->required();
  ap->add_option("--classify", apply.classify, "Raw YUV to classify from (default: recon)");
  ap->add_option("--params", apply.params, ".ccso parameter file")->required();
  AddGeometry(ap, apply.geometry);
  ap->add_option("--out", apply.out, "Output raw YUV")->required();
  ap->add_option("--path", apply.path, "Filter implementation")
      ->check(CLI::IsMember({"batch", "scalar"}))
      ->capture_default_str();
  ap->add_option("--manifest", manifest, "Write a replayable run manifest");

  MetricsArgs metrics;
  CLI::App* m = app.add_subcommand("metrics", "Per-plane SSE, MSE and PSNR");
  m->add_option("--orig", metrics.orig, "Reference raw YUV")->required();
  m->add_option("--test", metrics.test, "Test raw YUV")->required();
  AddGeometry(m, metrics.geometry);
  m->add_option("--report", metrics.report, "key=value report file");
  m->add_option("--manifest", manifest, "Write a replayable run manifest");

  BdRateArgs bdrate;
  CLI::App* b = app.add_subcommand("bdrate", "BD-rate between two RD-point CSVs");
  b->add_option("--anchor-csv", bdrate.anchor_csv, "Anchor RD points")->required();
  b->add_option("--test-csv", bdrate.test_csv, "Test RD points")->required();
  b->add_option("--manifest", manifest, "Write a replayable run manifest");

  DegradeArgs degrade;
  CLI::App* d = app.add_subcommand("degrade", "Apply a deterministic degradation");
  d->add_option("--in", degrade.in, "Input raw YUV")->required();
  d->add_option("--profile", degrade.profile,
                "Steps, e.g. 'blockmean=8@cb,cr;noise=4@cb,cr'")
      ->required();
  d->add_option("--seed", degrade.seed, "RNG seed")->capture_default_str();
  d->add_option("--out", degrade.out, "Output raw YUV")->required();
  AddGeometry(d, degrade.geometry);
  d->add_option("--manifest", manifest, "Write a replayable run manifest");

  std::string replay_path;
  CLI::App* r = app.add_subcommand("replay", "Re-run a command from its manifest");
  r->add_option("--manifest", replay_path, "Manifest written by --manifest")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  int code = kExitOk;
  if (*s) code = RunSearch(search);
  if (*ap) code = RunApply(apply);
  if (*m) code = RunMetrics(metrics);
  if (*b) code = RunBdRate(bdrate);
  if (*d) code = RunDegrade(degrade);
  if (*r) return RunReplay(replay_path);
  if (code == kExitOk && !manifest.empty()) WriteManifest(manifest, args, degrade.seed);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return Run(std::move(args));
  } catch (const CommandError& e) {
    std::cerr << "ccso: " << e.message << "\n";
    return e.exit_code;
  }
}
