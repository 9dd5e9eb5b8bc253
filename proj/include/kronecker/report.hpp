#pragma once

// CSV and JSON persistence of scan records.

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kronecker/errors.hpp"
#include "kronecker/harness.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

inline constexpr const char* kCsvHeader =
    "n1,n2,n3,m,r,rectangular,trivial,lower,e1,upper,alpha_lo,alpha_hi,alpha_exact,sumset,time_ms";

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw InvalidArgument("unknown report format: " + s);
}

namespace detail {

inline std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string opt_text(const std::optional<Rational>& v) { return v ? v->str() : ""; }

inline nlohmann::ordered_json opt_json(const std::optional<Rational>& v) {
  return v ? nlohmann::ordered_json(v->str()) : nlohmann::ordered_json(nullptr);
}

inline std::optional<Rational> opt_from_json(const nlohmann::ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return Rational::parse(j.get<std::string>());
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.n1 << ',' << r.n2 << ',' << r.n3 << ',' << r.m << ',' << r.r << ','
       << (r.rectangular ? "true" : "false") << ',' << detail::opt_text(r.trivial) << ','
       << detail::opt_text(r.lower) << ',' << detail::opt_text(r.e1) << ','
       << detail::opt_text(r.upper) << ',' << r.alpha_lo.str() << ',' << r.alpha_hi.str() << ','
       << detail::opt_text(r.alpha_exact) << ',' << (r.sumset ? "true" : "false") << ','
       << detail::real_text(r.time_ms) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const ScanRecord& r) {
  nlohmann::ordered_json j;
  j["raw"] = {r.raw.n1, r.raw.n2, r.raw.n3};
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["n3"] = r.n3;
  j["m"] = r.m;
  j["r"] = r.r;
  j["rectangular"] = r.rectangular;
  j["trivial"] = detail::opt_json(r.trivial);
  j["lower"] = detail::opt_json(r.lower);
  j["e1"] = detail::opt_json(r.e1);
  j["upper"] = detail::opt_json(r.upper);
  j["alpha_lo"] = r.alpha_lo.str();
  j["alpha_hi"] = r.alpha_hi.str();
  j["alpha_exact"] = detail::opt_json(r.alpha_exact);
  j["sumset"] = r.sumset;
  j["time_ms"] = r.time_ms;
  return j;
}

inline ScanRecord record_from_json(const nlohmann::ordered_json& j) {
  ScanRecord r;
  const auto& raw = j.at("raw");
  r.raw = {raw.at(0).get<std::int64_t>(), raw.at(1).get<std::int64_t>(),
           raw.at(2).get<std::int64_t>()};
  r.n1 = j.at("n1").get<std::int64_t>();
  r.n2 = j.at("n2").get<std::int64_t>();
  r.n3 = j.at("n3").get<std::int64_t>();
  r.m = j.at("m").get<std::int64_t>();
  r.r = j.at("r").get<std::int64_t>();
  r.rectangular = j.at("rectangular").get<bool>();
  r.trivial = detail::opt_from_json(j.at("trivial"));
  r.lower = detail::opt_from_json(j.at("lower"));
  r.e1 = detail::opt_from_json(j.at("e1"));
  r.upper = detail::opt_from_json(j.at("upper"));
  r.alpha_lo = Rational::parse(j.at("alpha_lo").get<std::string>());
  r.alpha_hi = Rational::parse(j.at("alpha_hi").get<std::string>());
  r.alpha_exact = detail::opt_from_json(j.at("alpha_exact"));
  r.sumset = j.at("sumset").get<bool>();
  r.time_ms = j.at("time_ms").get<double>();
  return r;
}

inline void write_json(std::ostream& os, const std::vector<ScanRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  os << arr.dump(2) << '\n';
}

inline std::vector<ScanRecord> read_json(std::istream& is) {
  const auto arr = nlohmann::ordered_json::parse(is);
  if (!arr.is_array()) throw InvalidArgument("report must be a JSON array");
  std::vector<ScanRecord> out;
  for (const auto& j : arr) out.push_back(record_from_json(j));
  return out;
}

inline void write_report(std::ostream& os, const std::vector<ScanRecord>& records,
                         ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_csv(os, records);
  } else {
    write_json(os, records);
  }
}

inline std::string report_string(const std::vector<ScanRecord>& records, ReportFormat format) {
  std::ostringstream os;
  write_report(os, records, format);
  return os.str();
}

inline void emit_report(const std::vector<ScanRecord>& records, ReportFormat format,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path + " for writing");
  write_report(out, records, format);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace kronecker
