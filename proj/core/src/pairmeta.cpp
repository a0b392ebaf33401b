#include "fxr/pairmeta.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "fxr/errors.hpp"

namespace fxr {

namespace {

// Reference table: symbol, category, scaling factor, spread group per year.
// 47 rows; cut points were 10 pips in 2011/2015 and 4 and 10 pips in 2019.
constexpr const char* kBuiltinTable = R"(# builtin currency-pair registry
symbol category scaling 2011 2015 2019
AUD/CAD Cross  10000 G1 G1 G1
AUD/CHF Cross  10000 G1 G1 G1
AUD/JPY Cross    100 G1 G1 G1
AUD/NZD Cross  10000 G2 G1 G1
AUD/USD Major  10000 G1 G1 G1
CAD/CHF Cross  10000 G1 G1 G1
CAD/JPY Cross    100 G1 G1 G1
CHF/JPY Cross    100 G1 G1 G1
EUR/AUD Cross  10000 G2 G1 G1
EUR/CAD Cross  10000 G1 G1 G1
EUR/CHF Cross  10000 G1 G1 G1
EUR/CZK Exotic 10000 G2 G2 G3
EUR/GBP Cross  10000 G1 G1 G1
EUR/HUF Exotic   100 G2 G2 G3
EUR/JPY Cross    100 G1 G1 G1
EUR/NOK Exotic 10000 G2 G2 G3
EUR/NZD Cross  10000 G2 G1 G2
EUR/PLN Exotic 10000 G2 G2 G3
EUR/SEK Exotic 10000 G2 G2 G3
EUR/TRY Exotic 10000 G2 G2 G3
EUR/USD Major  10000 G1 G1 G1
GBP/AUD Cross  10000 G1 G1 G2
GBP/CAD Cross  10000 G2 G1 G2
GBP/CHF Cross  10000 G2 G1 G1
GBP/JPY Cross    100 G1 G1 G1
GBP/NZD Cross  10000 G2 G1 G2
GBP/USD Major  10000 G1 G1 G1
NZD/CAD Cross  10000 G1 G1 G2
NZD/CHF Cross  10000 G2 G1 G1
NZD/JPY Cross    100 G1 G1 G1
NZD/USD Major  10000 G1 G1 G1
SGD/JPY Exotic   100 G1 G1 G1
USD/CAD Major  10000 G1 G1 G1
USD/CHF Major  10000 G1 G1 G1
USD/CZK Exotic 10000 G2 G2 G3
USD/DKK Exotic 10000 G1 G1 G2
USD/HKD Exotic 10000 G1 G1 G2
USD/HUF Exotic   100 G2 G2 G3
USD/JPY Major    100 G1 G1 G1
USD/MXN Exotic 10000 G2 G2 G3
USD/NOK Exotic 10000 G2 G2 G3
USD/PLN Exotic 10000 G2 G2 G3
USD/SEK Exotic 10000 G2 G2 G3
USD/SGD Exotic 10000 G1 G1 G1
USD/TRY Exotic 10000 G2 G1 G3
USD/ZAR Exotic 10000 G2 G2 G3
ZAR/JPY Exotic   100 G2 G2 G3
)";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string_view to_string(PairCategory c) {
  switch (c) {
    case PairCategory::Major: return "Major";
    case PairCategory::Cross: return "Cross";
    case PairCategory::Exotic: return "Exotic";
  }
  return "?";
}

PairCategory pair_category_from_string(std::string_view s) {
  if (s == "Major" || s == "major") return PairCategory::Major;
  if (s == "Cross" || s == "cross") return PairCategory::Cross;
  if (s == "Exotic" || s == "exotic") return PairCategory::Exotic;
  throw TableFormatError("unknown pair category: " + std::string(s));
}

void PairRegistry::add_pair(PairMeta meta) {
  if (meta.symbol.size() != 7 || meta.symbol[3] != '/') {
    throw TableFormatError("pair symbol must be 'XXX/YYY': " + meta.symbol);
  }
  meta.base = meta.symbol.substr(0, 3);
  meta.quote = meta.symbol.substr(4, 3);
  if (meta.scaling_factor <= 0) {
    throw TableFormatError("scaling factor must be positive: " + meta.symbol);
  }
  if (index_.contains(meta.symbol)) {
    throw TableFormatError("duplicate registry entry: " + meta.symbol);
  }
  index_.emplace(meta.symbol, pairs_.size());
  pairs_.push_back(std::move(meta));
}

void PairRegistry::register_thresholds(GroupThresholds t) {
  if (t.boundaries.empty() ||
      !std::is_sorted(t.boundaries.begin(), t.boundaries.end(),
                      std::less_equal<>{})) {
    throw TableFormatError("thresholds must be non-empty and strictly increasing");
  }
  if (t.boundaries.front() <= 0.0) {
    throw TableFormatError("threshold boundaries must be positive");
  }
  thresholds_[t.year] = std::move(t);
}

PairRegistry PairRegistry::from_table(std::istream& in) {
  PairRegistry reg;
  std::string line;
  std::vector<int> year_columns;
  bool header_seen = false;

  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "symbol" || fields[1] != "category" ||
          fields[2] != "scaling") {
        throw TableFormatError("expected header: symbol category scaling [years...]");
      }
      for (size_t i = 3; i < fields.size(); ++i) {
        year_columns.push_back(std::stoi(fields[i]));
      }
      header_seen = true;
      continue;
    }

    if (fields.size() != 3 + year_columns.size()) {
      throw TableFormatError("bad field count in row: " + line);
    }
    PairMeta meta;
    meta.symbol = fields[0];
    meta.category = pair_category_from_string(fields[1]);
    meta.scaling_factor = std::stoi(fields[2]);
    reg.add_pair(meta);
    for (size_t i = 0; i < year_columns.size(); ++i) {
      const std::string& g = fields[3 + i];
      if (g.size() < 2 || (g[0] != 'G' && g[0] != 'g')) {
        throw TableFormatError("group label must look like G1: " + g);
      }
      reg.table_groups_[meta.symbol][year_columns[i]] = std::stoi(g.substr(1));
    }
  }
  if (!header_seen) throw TableFormatError("empty registry table");
  return reg;
}

PairRegistry PairRegistry::from_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open registry table: " + path);
  return from_table(in);
}

PairRegistry PairRegistry::builtin() {
  std::istringstream in(kBuiltinTable);
  PairRegistry reg = from_table(in);
  reg.register_thresholds({2011, {10.0}});
  reg.register_thresholds({2015, {10.0}});
  reg.register_thresholds({2019, {4.0, 10.0}});
  return reg;
}

const PairMeta& PairRegistry::lookup_pair(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw UnknownPairError(std::string(symbol));
  return pairs_[it->second];
}

bool PairRegistry::has_pair(std::string_view symbol) const {
  return index_.contains(symbol);
}

int PairRegistry::assign_group(double avg_pip_spread, int year) const {
  if (avg_pip_spread < 0.0) {
    throw std::invalid_argument("pip spread must be non-negative");
  }
  auto it = thresholds_.find(year);
  if (it == thresholds_.end()) throw UnknownYearError(year);
  const auto& b = it->second.boundaries;
  // Cut points belong to the upper interval.
  int group = 1;
  for (double cut : b) {
    if (avg_pip_spread >= cut) ++group;
  }
  return group;
}

int PairRegistry::group_count(int year) const {
  auto it = thresholds_.find(year);
  if (it == thresholds_.end()) throw UnknownYearError(year);
  return static_cast<int>(it->second.boundaries.size()) + 1;
}

bool PairRegistry::has_year(int year) const { return thresholds_.contains(year); }

std::optional<int> PairRegistry::table_group(std::string_view symbol, int year) const {
  auto it = table_groups_.find(symbol);
  if (it == table_groups_.end()) return std::nullopt;
  auto yt = it->second.find(year);
  if (yt == it->second.end()) return std::nullopt;
  return yt->second;
}

std::vector<int> PairRegistry::years() const {
  std::vector<int> out;
  out.reserve(thresholds_.size());
  for (const auto& [year, t] : thresholds_) out.push_back(year);
  return out;
}

}  // namespace fxr
