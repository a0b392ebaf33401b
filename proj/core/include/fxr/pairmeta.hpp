#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fxr {

enum class PairCategory { Major, Cross, Exotic };

std::string_view to_string(PairCategory c);
PairCategory pair_category_from_string(std::string_view s);

struct PairMeta {
  std::string symbol;  // "XXX/YYY"
  std::string base;
  std::string quote;
  PairCategory category = PairCategory::Major;
  int scaling_factor = 10000;  // converts a price difference to pips

  double pip_size() const { return 1.0 / scaling_factor; }
};

// Cut points of the per-year pip-spread intervals. Boundaries are strictly
// increasing and belong to the upper interval ("10 <= s_pip" style), so the
// intervals are [0, b1), [b1, b2), ..., [bk, inf).
struct GroupThresholds {
  int year = 0;
  std::vector<double> boundaries;
};

// Registry of currency pairs, pip scaling factors, categories and
// year-dependent spread-group thresholds. Immutable once built; safe to
// share across concurrent pipeline workers.
class PairRegistry {
 public:
  // All 47 pairs of the published reference table, plus thresholds for
  // 2011, 2015 (one cut at 10 pips) and 2019 (cuts at 4 and 10 pips).
  static PairRegistry builtin();

  // Plain-text table: '#' comments, a header line
  //   symbol category scaling <year> <year> ...
  // then one whitespace/comma-separated row per pair, groups as G1/G2/G3.
  // Year columns are optional. Throws TableFormatError on defects.
  static PairRegistry from_table(std::istream& in);
  static PairRegistry from_table_file(const std::string& path);

  const PairMeta& lookup_pair(std::string_view symbol) const;
  bool has_pair(std::string_view symbol) const;

  // 1-based index of the interval containing avg_pip_spread.
  int assign_group(double avg_pip_spread, int year) const;
  int group_count(int year) const;
  bool has_year(int year) const;

  void register_thresholds(GroupThresholds t);

  // Reference group label from the loaded table, if the table carried one.
  std::optional<int> table_group(std::string_view symbol, int year) const;

  const std::vector<PairMeta>& pairs() const { return pairs_; }
  const std::map<int, GroupThresholds>& thresholds() const { return thresholds_; }
  std::vector<int> years() const;

 private:
  void add_pair(PairMeta meta);

  std::vector<PairMeta> pairs_;                     // table order
  std::map<std::string, size_t, std::less<>> index_;
  std::map<int, GroupThresholds> thresholds_;
  std::map<std::string, std::map<int, int>, std::less<>> table_groups_;
};

}  // namespace fxr
