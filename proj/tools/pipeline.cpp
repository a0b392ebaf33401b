#include "pipeline.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "fxr/curve_io.hpp"
#include "fxr/errors.hpp"
#include "fxr/timescales.hpp"

#include "discovery.hpp"

namespace fs = std::filesystem;

namespace fxr::cli {

namespace {

std::string curve_basename(const std::string& pair, int year, Scale scale,
                           ZeroHandling zero) {
  return "response_" + pair_token(pair) + "_" + std::to_string(year) + "_" +
         std::string(to_string(scale)) + "_" + std::string(to_string(zero));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

nlohmann::json config_echo(const RunConfig& cfg) {
  return nlohmann::json{
      {"scale", cfg.scale},
      {"tau_max", cfg.tau_max},
      {"zero_handling", cfg.zero_handling},
      {"format", cfg.format},
      {"glob", cfg.glob},
      {"workers", cfg.workers},
      {"log_returns", cfg.log_returns},
      {"week_average", cfg.week_average},
      {"stamp_offset_minutes", cfg.stamp_offset_minutes},
      {"input_dir", cfg.input_dir},
      {"output_dir", cfg.output_dir},
  };
}

struct EmittedFiles {
  std::vector<std::string> paths;
};

// Writes one curve in the requested formats, returns the emitted paths.
EmittedFiles emit_curve(const RunConfig& cfg, const ResponseCurve& curve,
                        const CurveMeta& meta, const std::string& basename) {
  EmittedFiles out;
  if (cfg.format == "csv" || cfg.format == "both") {
    std::ostringstream text;
    write_curve_csv(text, curve);
    const std::string path = cfg.output_dir + "/" + basename + ".csv";
    write_text_file(path, text.str());
    out.paths.push_back(path);
  }
  if (cfg.format == "json" || cfg.format == "both") {
    const std::string path = cfg.output_dir + "/" + basename + ".json";
    write_json_file(path, curve_to_json(curve, meta));
    out.paths.push_back(path);
  }
  return out;
}

}  // namespace

PairRegistry load_registry(const RunConfig& cfg) {
  if (cfg.registry_path.empty()) return PairRegistry::builtin();
  PairRegistry reg = PairRegistry::from_table_file(cfg.registry_path);
  // Custom tables start without thresholds; carry over the builtin years
  // so grouping still works unless the table redefines them.
  const PairRegistry base = PairRegistry::builtin();
  for (const auto& [year, t] : base.thresholds()) reg.register_thresholds(t);
  return reg;
}

std::vector<std::string> resolve_pairs(const RunConfig& cfg,
                                       const PairRegistry& reg) {
  if (cfg.pairs.size() == 1 && (cfg.pairs[0] == "ALL" || cfg.pairs[0] == "all")) {
    std::vector<std::string> out;
    for (const PairMeta& m : reg.pairs()) out.push_back(m.symbol);
    return out;
  }
  return cfg.pairs;
}

void run_parallel(int workers, size_t n, const std::function<void(size_t)>& fn) {
  const size_t threads = std::min<size_t>(static_cast<size_t>(workers), n);
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

PairYearResult process_pair_year(const RunConfig& cfg, const PairRegistry& reg,
                                 const std::string& pair, int year) {
  PairYearResult r;
  r.pair = pair;
  r.year = year;
  try {
    const PairMeta& meta = reg.lookup_pair(pair);
    const std::vector<std::string> files =
        discover_inputs(cfg.input_dir, pair, year, cfg.glob);
    if (files.empty()) {
      r.error = "no input files under " + cfg.input_dir;
      return r;
    }

    const auto scales = resolve_scales(cfg);
    const auto zeros = resolve_zeros(cfg);
    const ReturnKind kind = resolve_return_kind(cfg);
    const bool want_trade =
        std::find(scales.begin(), scales.end(), Scale::Trade) != scales.end();
    const bool want_phys =
        std::find(scales.begin(), scales.end(), Scale::Physical) != scales.end();

    ResponseAccumulator trade_acc(Scale::Trade, cfg.tau_max, kind);
    ResponseAccumulator phys_acc(Scale::Physical, cfg.tau_max, kind);
    std::vector<ResponseCurve> weekly_trade;
    std::map<ZeroHandling, std::vector<ResponseCurve>> weekly_phys;
    SpreadAccumulator spread(static_cast<double>(meta.scaling_factor));

    auto process_week = [&](WeekTicks&& w) {
      const TradeSeries events = to_trade_scale(w);
      if (events.size() == 0) return;
      const SignSeriesTrade signs = classify_trade_scale(events.midpoint);
      spread.add(events.spread);
      ++r.weeks;

      if (want_trade) {
        if (cfg.week_average) {
          try {
            weekly_trade.push_back(
                response_trade(events.midpoint, signs, cfg.tau_max, kind));
          } catch (const NoDataError&) {
            // a flat week contributes nothing to the weekly mean
          }
        } else {
          trade_acc.add_trade_week(events.midpoint, signs);
        }
      }
      if (want_phys) {
        const PhysicalSeries phys = to_physical_scale(events, w.week);
        const SignSeriesPhysical psigns =
            classify_physical_scale(signs, phys.n_trades);
        r.diagnostics.merge(psigns.diagnostics);
        if (cfg.week_average) {
          ResponseAccumulator one(Scale::Physical, cfg.tau_max, kind);
          one.add_physical_week(phys.midpoint, psigns.signs);
          for (ZeroHandling z : zeros) {
            try {
              weekly_phys[z].push_back(one.curve(z));
            } catch (const NoDataError&) {
            }
          }
        } else {
          phys_acc.add_physical_week(phys.midpoint, psigns.signs);
        }
      }
    };

    // Weeks can straddle two monthly files; coalesce batches that share a
    // window before processing.
    WeekTicks pending;
    bool have_pending = false;
    auto sink = [&](WeekTicks&& w) {
      if (have_pending && w.week.start_ms == pending.week.start_ms) {
        pending.append(w);
        return;
      }
      if (have_pending) process_week(std::move(pending));
      pending = std::move(w);
      have_pending = true;
    };
    for (const std::string& file : files) {
      r.stats.merge(scan_file(file, sink, cfg.stamp_offset_minutes));
    }
    if (have_pending) process_week(std::move(pending));

    if (r.weeks == 0) {
      r.error = "no data inside market time";
      return r;
    }
    r.spread = spread.finalize(pair, year);

    if (want_trade) {
      // zero handling is a physical-scale concept; trade signs are never 0,
      // so the trade curve is tagged with the excluding convention
      ResponseCurve c;
      if (cfg.week_average) {
        std::vector<const ResponseCurve*> ptrs;
        for (const ResponseCurve& w : weekly_trade) ptrs.push_back(&w);
        if (ptrs.empty()) throw NoDataError("no week produced a trade curve");
        c = mean_curves(ptrs);
      } else {
        c = trade_acc.curve();
      }
      r.curves.emplace_back(Scale::Trade, ZeroHandling::Exclude, std::move(c));
    }
    if (want_phys) {
      for (ZeroHandling z : zeros) {
        ResponseCurve c;
        if (cfg.week_average) {
          std::vector<const ResponseCurve*> ptrs;
          for (const ResponseCurve& w : weekly_phys[z]) ptrs.push_back(&w);
          if (ptrs.empty()) {
            throw NoDataError("no week produced a physical curve");
          }
          c = mean_curves(ptrs);
        } else {
          c = phys_acc.curve(z);
        }
        r.curves.emplace_back(Scale::Physical, z, std::move(c));
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.curves.clear();
  }
  return r;
}

namespace {

std::vector<PairYearResult> run_tasks(const RunConfig& cfg,
                                      const PairRegistry& reg,
                                      const std::vector<std::string>& pairs) {
  std::vector<std::pair<std::string, int>> tasks;
  for (int year : cfg.years) {
    for (const std::string& pair : pairs) tasks.emplace_back(pair, year);
  }
  std::vector<PairYearResult> results(tasks.size());
  run_parallel(cfg.workers, tasks.size(), [&](size_t i) {
    results[i] = process_pair_year(cfg, reg, tasks[i].first, tasks[i].second);
  });
  // deterministic emission order regardless of scheduling
  std::stable_sort(results.begin(), results.end(),
                   [](const PairYearResult& a, const PairYearResult& b) {
                     return std::tie(a.year, a.pair) < std::tie(b.year, b.pair);
                   });
  return results;
}

}  // namespace

int run_response(const RunConfig& cfg) {
  validate_common(cfg);
  if (cfg.input_dir.empty()) throw ConfigError("input-dir is required");
  const PairRegistry reg = load_registry(cfg);
  const std::vector<std::string> pairs = resolve_pairs(cfg, reg);
  fs::create_directories(cfg.output_dir);

  const std::vector<PairYearResult> results = run_tasks(cfg, reg, pairs);
  const ReturnKind kind = resolve_return_kind(cfg);

  nlohmann::json outputs = nlohmann::json::array();
  nlohmann::json errors = nlohmann::json::array();
  nlohmann::json spreads = nlohmann::json::array();
  nlohmann::json diagnostics = nlohmann::json::array();
  size_t files_written = 0;

  for (const PairYearResult& r : results) {
    if (!r.ok()) {
      errors.push_back({{"pair", r.pair}, {"year", r.year}, {"message", r.error}});
      std::fprintf(stderr, "error: %s %d: %s\n", r.pair.c_str(), r.year,
                   r.error.c_str());
      continue;
    }
    spreads.push_back(spread_stat_to_json(*r.spread, 0));
    diagnostics.push_back({{"pair", r.pair},
                           {"year", r.year},
                           {"weeks", r.weeks},
                           {"sign_zeros", r.diagnostics.to_json()},
                           {"ingest", r.stats.to_json()}});
    for (const auto& [scale, zero, curve] : r.curves) {
      CurveMeta meta{r.pair, r.year, scale, zero, kind};
      const std::string base = curve_basename(r.pair, r.year, scale, zero);
      const EmittedFiles files = emit_curve(cfg, curve, meta, base);
      files_written += files.paths.size();
      for (const std::string& path : files.paths) {
        outputs.push_back({{"pair", r.pair},
                           {"year", r.year},
                           {"scale", to_string(scale)},
                           {"zero_handling", to_string(zero)},
                           {"tau_max", curve.tau_max()},
                           {"path", path}});
      }
    }
  }

  nlohmann::json manifest{{"command", "response"},
                          {"config", config_echo(cfg)},
                          {"pairs_requested", pairs},
                          {"years", cfg.years},
                          {"outputs", outputs},
                          {"errors", errors},
                          {"spreads", spreads},
                          {"diagnostics", diagnostics}};
  write_json_file(cfg.output_dir + "/manifest.json", manifest);

  std::printf("response: %zu curve files, %zu errors -> %s\n", files_written,
              errors.size(), cfg.output_dir.c_str());
  return errors.empty() ? 0 : 1;
}

namespace {

// Curve + spread source for spread-groups: freshly estimated, or reloaded
// from a previous response run ("re-aggregation without re-estimation").
struct GroupSource {
  std::map<std::pair<std::string, int>, SpreadStat> spreads;
  std::map<std::tuple<std::string, int, Scale, ZeroHandling>, ResponseCurve>
      curves;
  nlohmann::json errors = nlohmann::json::array();
};

GroupSource estimate_source(const RunConfig& cfg, const PairRegistry& reg,
                            const std::vector<std::string>& pairs) {
  GroupSource src;
  for (const PairYearResult& r : run_tasks(cfg, reg, pairs)) {
    if (!r.ok()) {
      src.errors.push_back(
          {{"pair", r.pair}, {"year", r.year}, {"message", r.error}});
      continue;
    }
    src.spreads.emplace(std::pair{r.pair, r.year}, *r.spread);
    for (const auto& [scale, zero, curve] : r.curves) {
      src.curves.emplace(std::tuple{r.pair, r.year, scale, zero}, curve);
    }
  }
  return src;
}

GroupSource load_source(const RunConfig& cfg,
                        const std::vector<std::string>& pairs) {
  GroupSource src;
  const std::string manifest_path = cfg.curves_dir + "/manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("curves-dir has no manifest.json: " + manifest_path);
  nlohmann::json manifest;
  in >> manifest;
  std::map<std::pair<std::string, int>, SpreadStat> spread_index;
  for (const auto& s : manifest.at("spreads")) {
    SpreadStat stat;
    stat.symbol = s.at("symbol").get<std::string>();
    stat.year = s.at("year").get<int>();
    stat.avg_pip_spread = s.at("avg_pip_spread").get<double>();
    stat.n_obs = s.at("n_obs").get<uint64_t>();
    spread_index.emplace(std::pair{stat.symbol, stat.year}, stat);
  }

  const auto scales = resolve_scales(cfg);
  const auto zeros = resolve_zeros(cfg);
  for (int year : cfg.years) {
    for (const std::string& pair : pairs) {
      const auto spread_it = spread_index.find({pair, year});
      if (spread_it == spread_index.end()) {
        src.errors.push_back({{"pair", pair},
                              {"year", year},
                              {"message", "not present in curves-dir manifest"}});
        continue;
      }
      bool complete = true;
      for (Scale scale : scales) {
        const std::vector<ZeroHandling> zs =
            scale == Scale::Trade ? std::vector<ZeroHandling>{ZeroHandling::Exclude}
                                  : zeros;
        for (ZeroHandling z : zs) {
          const std::string path = cfg.curves_dir + "/" +
                                   curve_basename(pair, year, scale, z) +
                                   ".json";
          try {
            LoadedCurve lc = load_curve_file(path);
            src.curves.emplace(std::tuple{pair, year, scale, z},
                               std::move(lc.curve));
          } catch (const std::exception& e) {
            src.errors.push_back(
                {{"pair", pair}, {"year", year}, {"message", e.what()}});
            complete = false;
          }
        }
      }
      if (complete) src.spreads.emplace(std::pair{pair, year}, spread_it->second);
    }
  }
  return src;
}

}  // namespace

int run_spread_groups(const RunConfig& cfg) {
  validate_common(cfg);
  if (cfg.curves_dir.empty() && cfg.input_dir.empty()) {
    throw ConfigError("spread-groups needs input-dir or curves-dir");
  }
  const PairRegistry reg = load_registry(cfg);
  for (int year : cfg.years) {
    if (!reg.has_year(year)) {
      throw ConfigError("no spread-group thresholds registered for year " +
                        std::to_string(year));
    }
  }
  const std::vector<std::string> pairs = resolve_pairs(cfg, reg);
  fs::create_directories(cfg.output_dir);

  const GroupSource src = cfg.curves_dir.empty()
                              ? estimate_source(cfg, reg, pairs)
                              : load_source(cfg, pairs);
  const ReturnKind kind = resolve_return_kind(cfg);
  const auto scales = resolve_scales(cfg);
  const auto zeros = resolve_zeros(cfg);

  nlohmann::json outputs = nlohmann::json::array();
  nlohmann::json spread_rows = nlohmann::json::array();
  nlohmann::json group_map = nlohmann::json::object();
  nlohmann::json warnings = nlohmann::json::array();
  size_t files_written = 0;

  for (int year : cfg.years) {
    // spread table and group assignment
    std::ostringstream csv;
    write_spread_csv_header(csv);
    std::map<std::string, int> assignment;
    for (const std::string& pair : pairs) {
      const auto it = src.spreads.find({pair, year});
      if (it == src.spreads.end()) continue;
      const int group = reg.assign_group(it->second.avg_pip_spread, year);
      assignment[pair] = group;
      write_spread_csv_row(csv, it->second, group);
      spread_rows.push_back(spread_stat_to_json(it->second, group));
    }
    const std::string spread_base =
        cfg.output_dir + "/spreads_" + std::to_string(year);
    if (cfg.format == "csv" || cfg.format == "both") {
      write_text_file(spread_base + ".csv", csv.str());
      ++files_written;
    }
    if (cfg.format == "json" || cfg.format == "both") {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [pair, group] : assignment) {
        rows.push_back(spread_stat_to_json(src.spreads.at({pair, year}), group));
      }
      write_json_file(spread_base + ".json", rows);
      ++files_written;
    }
    group_map[std::to_string(year)] = assignment;

    // group-averaged curves per scale and zero handling
    for (Scale scale : scales) {
      const std::vector<ZeroHandling> zs =
          scale == Scale::Trade ? std::vector<ZeroHandling>{ZeroHandling::Exclude}
                                : zeros;
      for (ZeroHandling z : zs) {
        std::vector<GroupCurveInput> inputs;
        for (const auto& [pair, group] : assignment) {
          const auto it = src.curves.find({pair, year, scale, z});
          if (it == src.curves.end()) continue;
          inputs.push_back({pair, group, &it->second});
        }
        if (inputs.empty()) continue;
        std::vector<int> empty_groups;
        const std::vector<GroupCurve> groups =
            group_average(std::move(inputs), reg.group_count(year), &empty_groups);
        for (int g : empty_groups) {
          const std::string msg = "year " + std::to_string(year) + " " +
                                  std::string(to_string(scale)) + "/" +
                                  std::string(to_string(z)) + ": group " +
                                  std::to_string(g) + " is empty";
          warnings.push_back(msg);
          std::fprintf(stderr, "warning: %s\n", msg.c_str());
        }
        for (const GroupCurve& gc : groups) {
          const std::string base = "group_response_" + std::to_string(year) +
                                   "_" + std::string(to_string(scale)) + "_" +
                                   std::string(to_string(z)) + "_g" +
                                   std::to_string(gc.group);
          if (cfg.format == "csv" || cfg.format == "both") {
            std::ostringstream text;
            write_curve_csv(text, gc.curve);
            write_text_file(cfg.output_dir + "/" + base + ".csv", text.str());
            ++files_written;
          }
          if (cfg.format == "json" || cfg.format == "both") {
            write_json_file(cfg.output_dir + "/" + base + ".json",
                            group_curve_to_json(gc, year, scale, z, kind));
            ++files_written;
          }
          outputs.push_back({{"year", year},
                             {"scale", to_string(scale)},
                             {"zero_handling", to_string(z)},
                             {"group", gc.group},
                             {"members", gc.members}});
        }
      }
    }
  }

  nlohmann::json manifest{{"command", "spread-groups"},
                          {"config", config_echo(cfg)},
                          {"years", cfg.years},
                          {"spreads", spread_rows},
                          {"groups", group_map},
                          {"outputs", outputs},
                          {"errors", src.errors},
                          {"warnings", warnings}};
  write_json_file(cfg.output_dir + "/manifest.json", manifest);

  std::printf("spread-groups: %zu files, %zu exclusions -> %s\n", files_written,
              src.errors.size(), cfg.output_dir.c_str());
  return src.errors.empty() ? 0 : 1;
}

int run_synth(const SynthRunConfig& cfg) {
  int y, m, d;
  if (std::sscanf(cfg.week_sunday.c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
    throw ConfigError("week must be YYYY-MM-DD (an opening Sunday)");
  }
  MarketWeek week;
  try {
    week = market_week_from_sunday(y, m, d);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (cfg.model.n_events == 0) {
    std::fprintf(stderr, "warning: n_events = 0, writing an empty dataset\n");
  }
  const SynthStream stream = generate(cfg.model, week);

  std::ostringstream text;
  write_ascii(text, stream.ticks, cfg.stamp_offset_minutes);
  const std::string body = text.str();
  if (cfg.out_path.size() > 3 &&
      cfg.out_path.compare(cfg.out_path.size() - 3, 3, ".gz") == 0) {
    gzFile gz = gzopen(cfg.out_path.c_str(), "wb");
    if (!gz) throw IoError("cannot write " + cfg.out_path);
    gzwrite(gz, body.data(), static_cast<unsigned>(body.size()));
    gzclose(gz);
  } else {
    write_text_file(cfg.out_path, body);
  }

  if (!cfg.signs_path.empty()) {
    std::ostringstream signs;
    signs << "n,sign\n";
    for (size_t i = 0; i < stream.true_signs.size(); ++i) {
      signs << i << ',' << int(stream.true_signs[i]) << '\n';
    }
    write_text_file(cfg.signs_path, signs.str());
  }

  nlohmann::json summary{
      {"file", cfg.out_path},
      {"week_id", week.week_id},
      {"n_ticks", stream.ticks.size()},
      {"seed", cfg.model.seed},
      {"first_ts_ms", stream.ticks.empty() ? 0 : stream.ticks.front().ts_ms},
      {"last_ts_ms", stream.ticks.empty() ? 0 : stream.ticks.back().ts_ms},
  };
  std::printf("%s\n", summary.dump(2).c_str());
  return 0;
}

int run_validate(const RunConfig& cfg, const std::vector<std::string>& files) {
  std::vector<std::string> inputs = files;
  if (inputs.empty()) {
    if (cfg.input_dir.empty()) {
      throw ConfigError("validate needs --input files or an input-dir");
    }
    const PairRegistry reg = load_registry(cfg);
    for (const std::string& pair : resolve_pairs(cfg, reg)) {
      for (int year : cfg.years) {
        for (std::string& f : discover_inputs(cfg.input_dir, pair, year, cfg.glob)) {
          inputs.push_back(std::move(f));
        }
      }
    }
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  }

  nlohmann::json per_file = nlohmann::json::array();
  IngestStats total;
  int errors = 0;
  for (const std::string& path : inputs) {
    try {
      const IngestStats stats = scan_file(
          path, [](WeekTicks&&) {}, cfg.stamp_offset_minutes);
      total.merge(stats);
      nlohmann::json entry = stats.to_json();
      entry["path"] = path;
      if (stats.lines_total == 0) entry["warning"] = "empty file";
      per_file.push_back(std::move(entry));
    } catch (const IoError& e) {
      per_file.push_back({{"path", path}, {"error", e.what()}});
      ++errors;
    }
  }

  nlohmann::json report{{"command", "validate"},
                        {"files", per_file},
                        {"total", total.to_json()}};
  std::printf("%s\n", report.dump(2).c_str());
  return errors == 0 ? 0 : 1;
}

}  // namespace fxr::cli
