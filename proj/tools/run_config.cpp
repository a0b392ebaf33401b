#include "run_config.hpp"

namespace fxr::cli {

std::vector<Scale> resolve_scales(const RunConfig& cfg) {
  if (cfg.scale == "both") return {Scale::Trade, Scale::Physical};
  if (cfg.scale == "trade") return {Scale::Trade};
  if (cfg.scale == "physical") return {Scale::Physical};
  throw ConfigError("scale must be trade, physical or both: " + cfg.scale);
}

std::vector<ZeroHandling> resolve_zeros(const RunConfig& cfg) {
  if (cfg.zero_handling == "both") {
    return {ZeroHandling::Exclude, ZeroHandling::Include};
  }
  if (cfg.zero_handling == "exclude") return {ZeroHandling::Exclude};
  if (cfg.zero_handling == "include") return {ZeroHandling::Include};
  throw ConfigError("zero-handling must be exclude, include or both: " +
                    cfg.zero_handling);
}

ReturnKind resolve_return_kind(const RunConfig& cfg) {
  return cfg.log_returns ? ReturnKind::Log : ReturnKind::Relative;
}

std::string pair_token(const std::string& symbol) {
  std::string token;
  for (char c : symbol) {
    if (c != '/') token.push_back(c);
  }
  return token;
}

void validate_common(const RunConfig& cfg) {
  if (cfg.pairs.empty()) throw ConfigError("no pairs requested");
  if (cfg.years.empty()) throw ConfigError("no years requested");
  if (cfg.tau_max < 1) throw ConfigError("tau-max must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both") {
    throw ConfigError("format must be csv, json or both: " + cfg.format);
  }
  resolve_scales(cfg);
  resolve_zeros(cfg);
}

}  // namespace fxr::cli
