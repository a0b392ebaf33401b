#include "fxr/curve_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "fxr/errors.hpp"

namespace fxr {

namespace {

// Shortest round-trip decimal form keeps emitted files byte-deterministic.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_curve_csv(std::ostream& out, const ResponseCurve& curve) {
  out << "tau,value,count\n";
  for (uint32_t tau = 1; tau <= curve.tau_max(); ++tau) {
    if (curve.has_data(tau)) {
      out << tau << ',' << fmt_double(curve.value(tau)) << ','
          << curve.count(tau) << '\n';
    } else {
      out << tau << ",nan,0\n";
    }
  }
}

nlohmann::json curve_to_json(const ResponseCurve& curve, const CurveMeta& meta) {
  nlohmann::json values = nlohmann::json::array();
  for (uint32_t tau = 1; tau <= curve.tau_max(); ++tau) {
    if (curve.has_data(tau)) {
      values.push_back(curve.value(tau));
    } else {
      values.push_back(nullptr);  // explicit no-data marker
    }
  }
  return nlohmann::json{
      {"pair", meta.pair},
      {"year", meta.year},
      {"scale", to_string(curve.scale)},
      {"zero_handling", to_string(meta.zero_handling)},
      {"return_kind", to_string(curve.return_kind)},
      {"tau_max", curve.tau_max()},
      {"values", std::move(values)},
      {"counts", curve.counts},
  };
}

LoadedCurve curve_from_json(const nlohmann::json& j) {
  LoadedCurve out;
  out.meta.pair = j.at("pair").get<std::string>();
  out.meta.year = j.at("year").get<int>();
  out.meta.scale = scale_from_string(j.at("scale").get<std::string>());
  out.meta.zero_handling =
      zero_handling_from_string(j.at("zero_handling").get<std::string>());
  out.meta.return_kind =
      return_kind_from_string(j.at("return_kind").get<std::string>());
  out.curve.scale = out.meta.scale;
  out.curve.return_kind = out.meta.return_kind;
  const auto& values = j.at("values");
  const auto& counts = j.at("counts");
  if (values.size() != counts.size()) {
    throw TableFormatError("curve values/counts length mismatch");
  }
  out.curve.values.reserve(values.size());
  out.curve.counts.reserve(counts.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const uint64_t c = counts[i].get<uint64_t>();
    out.curve.counts.push_back(c);
    out.curve.values.push_back(values[i].is_null() ? ResponseCurve::kNoData
                                                   : values[i].get<double>());
  }
  return out;
}

LoadedCurve load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curve file: " + path);
  nlohmann::json j;
  in >> j;
  return curve_from_json(j);
}

nlohmann::json group_curve_to_json(const GroupCurve& gc, int year, Scale scale,
                                   ZeroHandling zero, ReturnKind kind) {
  CurveMeta meta;
  meta.pair = "group-" + std::to_string(gc.group);
  meta.year = year;
  meta.scale = scale;
  meta.zero_handling = zero;
  meta.return_kind = kind;
  nlohmann::json j = curve_to_json(gc.curve, meta);
  j.erase("pair");
  j["group"] = gc.group;
  j["members"] = gc.members;
  return j;
}

nlohmann::json spread_stat_to_json(const SpreadStat& s, int group) {
  return nlohmann::json{
      {"symbol", s.symbol},
      {"year", s.year},
      {"avg_pip_spread", s.avg_pip_spread},
      {"n_obs", s.n_obs},
      {"group", group},
  };
}

void write_spread_csv_header(std::ostream& out) {
  out << "symbol,year,avg_pip_spread,n_obs,group\n";
}

void write_spread_csv_row(std::ostream& out, const SpreadStat& s, int group) {
  out << s.symbol << ',' << s.year << ',' << fmt_double(s.avg_pip_spread) << ','
      << s.n_obs << ',' << group << '\n';
}

}  // namespace fxr
