#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fxr/errors.hpp"

#include "pipeline.hpp"
#include "run_config.hpp"

namespace {

using fxr::cli::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--pairs", cfg.pairs,
                  "Currency pairs (e.g. EUR/USD,USD/JPY) or ALL")
      ->delimiter(',')
      ->default_val(std::vector<std::string>{"ALL"});
  cmd->add_option("--years", cfg.years, "Calendar years (e.g. 2011,2015,2019)")
      ->delimiter(',')
      ->required();
  cmd->add_option("--scale", cfg.scale, "Time scale: trade, physical or both")
      ->default_val("both");
  cmd->add_option("--tau-max", cfg.tau_max, "Largest time lag")
      ->default_val(1000);
  cmd->add_option("--zero-handling", cfg.zero_handling,
                  "Physical-scale zero signs: exclude, include or both")
      ->default_val("exclude");
  cmd->add_option("--input-dir", cfg.input_dir, "Directory of tick files")
      ->envname("FXR_INPUT_DIR");
  cmd->add_option("--output-dir", cfg.output_dir, "Output directory")
      ->default_val("out");
  cmd->add_option("--format", cfg.format, "Output format: csv, json or both")
      ->default_val("csv");
  cmd->add_option("--glob", cfg.glob,
                  "File pattern; {pair} and {year} are substituted")
      ->default_val("*{pair}*{year}*");
  cmd->add_option("--workers", cfg.workers, "Concurrent pair-year tasks")
      ->default_val(1);
  cmd->add_flag("--log-returns", cfg.log_returns,
                "Log returns instead of relative returns (sensitivity check)");
  cmd->add_flag("--week-average", cfg.week_average,
                "Average weekly curves equally instead of pooling by count");
  cmd->add_option("--stamp-offset-min", cfg.stamp_offset_minutes,
                  "UTC offset of file timestamps in minutes (provider stamps "
                  "fixed EST)")
      ->default_val(-300);
  cmd->add_option("--registry", cfg.registry_path,
                  "Pair registry table (default: built-in reference table)");
  cmd->set_config("--config", "", "Key-value config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Price response functions and pip-spread grouping for spot FX "
               "tick data"};
  app.require_subcommand(1);

  RunConfig response_cfg;
  CLI::App* response =
      app.add_subcommand("response", "Estimate response curves per pair-year");
  add_common_options(response, response_cfg);

  RunConfig groups_cfg;
  CLI::App* groups = app.add_subcommand(
      "spread-groups",
      "Pip-spread statistics, group assignment and group-averaged curves");
  add_common_options(groups, groups_cfg);
  groups->add_option("--curves-dir", groups_cfg.curves_dir,
                     "Reuse curves from a previous response run instead of "
                     "re-estimating");

  fxr::cli::SynthRunConfig synth_cfg;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic tick dataset");
  synth->add_option("--out", synth_cfg.out_path, "Output file (.gz supported)")
      ->required();
  synth->add_option("--week", synth_cfg.week_sunday,
                    "Opening Sunday of the market week, YYYY-MM-DD")
      ->default_val("2019-07-07");
  synth->add_option("--seed", synth_cfg.model.seed, "RNG seed")->default_val(1);
  synth->add_option("--events", synth_cfg.model.n_events, "Number of ticks")
      ->default_val(10000);
  synth->add_option("--rho", synth_cfg.model.sign_autocorr,
                    "Probability the next sign repeats the previous one")
      ->default_val(0.5);
  synth->add_option("--impact-g", synth_cfg.model.impact_g,
                    "Pips moved in sign direction per trade")
      ->default_val(1.0);
  synth->add_option("--noise-pips", synth_cfg.model.noise_pips,
                    "Symmetric midpoint noise amplitude in pips")
      ->default_val(0.0);
  synth->add_option("--base-price", synth_cfg.model.base_price,
                    "Starting midpoint")
      ->default_val(1.13);
  synth->add_option("--spread-pips", synth_cfg.model.spread_pips,
                    "Constant quoted spread in pips")
      ->default_val(1.0);
  synth->add_option("--scaling", synth_cfg.model.scaling_factor,
                    "Pip scaling factor")
      ->default_val(10000);
  synth->add_option("--permanent-frac", synth_cfg.model.impact_permanent_frac,
                    "Share of each impact that never decays")
      ->default_val(1.0);
  synth->add_option("--decay", synth_cfg.model.impact_decay,
                    "Per-trade decay of the transient impact share")
      ->default_val(0.99);
  synth->add_option("--signs-out", synth_cfg.signs_path,
                    "Also write the true trade signs as CSV");
  synth->add_option("--stamp-offset-min", synth_cfg.stamp_offset_minutes,
                    "UTC offset for rendered timestamps")
      ->default_val(-300);

  RunConfig validate_cfg;
  std::vector<std::string> validate_files;
  CLI::App* validate = app.add_subcommand(
      "validate", "Parse-only pass emitting ingest statistics as JSON");
  validate->add_option("--input", validate_files, "Tick files to validate");
  validate->add_option("--pairs", validate_cfg.pairs, "Pairs for discovery")
      ->delimiter(',')
      ->default_val(std::vector<std::string>{"ALL"});
  validate->add_option("--years", validate_cfg.years, "Years for discovery")
      ->delimiter(',');
  validate->add_option("--input-dir", validate_cfg.input_dir,
                       "Directory of tick files")
      ->envname("FXR_INPUT_DIR");
  validate->add_option("--glob", validate_cfg.glob, "File pattern")
      ->default_val("*{pair}*{year}*");
  validate->add_option("--stamp-offset-min", validate_cfg.stamp_offset_minutes,
                       "UTC offset of file timestamps in minutes")
      ->default_val(-300);
  validate->add_option("--registry", validate_cfg.registry_path,
                       "Pair registry table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; usage errors are 2
  }

  try {
    if (response->parsed()) return fxr::cli::run_response(response_cfg);
    if (groups->parsed()) return fxr::cli::run_spread_groups(groups_cfg);
    if (synth->parsed()) return fxr::cli::run_synth(synth_cfg);
    if (validate->parsed()) {
      return fxr::cli::run_validate(validate_cfg, validate_files);
    }
  } catch (const fxr::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const fxr::InvalidModelError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
