#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fxr/ingest.hpp"
#include "fxr/pairmeta.hpp"
#include "fxr/response.hpp"
#include "fxr/signs.hpp"
#include "fxr/synth.hpp"

#include "run_config.hpp"

namespace fxr::cli {

struct PairYearResult {
  std::string pair;
  int year = 0;
  std::string error;  // empty = success
  IngestStats stats;
  PhysicalSignDiagnostics diagnostics;
  std::optional<SpreadStat> spread;
  std::vector<std::tuple<Scale, ZeroHandling, ResponseCurve>> curves;
  uint64_t weeks = 0;

  bool ok() const { return error.empty(); }
};

PairRegistry load_registry(const RunConfig& cfg);

// Expands the "ALL" token against the registry.
std::vector<std::string> resolve_pairs(const RunConfig& cfg,
                                       const PairRegistry& reg);

// Full estimation of one pair-year: discovery, streaming ingest, week
// coalescing across monthly file boundaries, signs, response curves on the
// requested scales, spread statistic. Never throws; failures land in
// `error` so one bad pair cannot abort a batch.
PairYearResult process_pair_year(const RunConfig& cfg, const PairRegistry& reg,
                                 const std::string& pair, int year);

// Subcommand drivers; return the process exit code (0 ok, 1 partial failure).
// Usage/configuration defects throw ConfigError (mapped to exit code 2).
int run_response(const RunConfig& cfg);
int run_spread_groups(const RunConfig& cfg);

struct SynthRunConfig {
  FlowModel model;
  std::string out_path;
  std::string signs_path;              // optional ground-truth dump
  std::string week_sunday = "2019-07-07";  // opening Sunday, NY local
  int stamp_offset_minutes = -300;
};
int run_synth(const SynthRunConfig& cfg);

int run_validate(const RunConfig& cfg, const std::vector<std::string>& files);

// Runs fn(0..n-1) on up to `workers` threads; results must go to
// preallocated slots.
void run_parallel(int workers, size_t n, const std::function<void(size_t)>& fn);

}  // namespace fxr::cli
