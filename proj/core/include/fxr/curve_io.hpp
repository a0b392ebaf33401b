#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fxr/response.hpp"

namespace fxr {

struct CurveMeta {
  std::string pair;
  int year = 0;
  Scale scale = Scale::Trade;
  ZeroHandling zero_handling = ZeroHandling::Exclude;
  ReturnKind return_kind = ReturnKind::Relative;
};

// "tau,value,count" rows; lags with no data print value "nan".
void write_curve_csv(std::ostream& out, const ResponseCurve& curve);

nlohmann::json curve_to_json(const ResponseCurve& curve, const CurveMeta& meta);

struct LoadedCurve {
  ResponseCurve curve;
  CurveMeta meta;
};

LoadedCurve curve_from_json(const nlohmann::json& j);
LoadedCurve load_curve_file(const std::string& path);

nlohmann::json group_curve_to_json(const GroupCurve& gc, int year, Scale scale,
                                   ZeroHandling zero, ReturnKind kind);

nlohmann::json spread_stat_to_json(const SpreadStat& s, int group);
void write_spread_csv_header(std::ostream& out);
void write_spread_csv_row(std::ostream& out, const SpreadStat& s, int group);

}  // namespace fxr
