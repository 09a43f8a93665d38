#include "holderreg/report_io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace holderreg::io {

using nlohmann::json;

namespace {

json extended_json(double v) {
  if (v == kInf) return json("inf");
  if (v == -kInf) return json("-inf");
  return json(v);
}

json per_scale_json(const std::vector<std::pair<double, double>>& rows) {
  json arr = json::array();
  for (const auto& [t, v] : rows) arr.push_back(json::array({t, extended_json(v)}));
  return arr;
}

}  // namespace

std::string encode_extended(double v) { return extended_json(v).dump(); }

std::string limit_report_json(const std::string& quantity, double q, const LimitEstimate& est) {
  json j;
  j["quantity"] = quantity;
  j["q"] = q;
  j["value"] = extended_json(est.value);
  j["verdict"] = to_string(est.verdict);
  j["converged"] = est.converged;
  j["per_scale"] = per_scale_json(est.per_scale);
  return j.dump(2) + "\n";
}

std::string regularity_report_json(const std::string& quantity, const RegularityReport& rep) {
  json j;
  j["quantity"] = quantity;
  j["q"] = rep.q;
  j["value"] = extended_json(rep.modulus);
  j["verdict"] = to_string(rep.verdict);
  j["value_class"] = to_string(rep.value_class);
  j["converged"] = rep.converged;
  j["neighborhood_radius"] = rep.neighborhood_radius;
  j["witness"] = rep.witness;
  if (rep.isolated_point.has_value()) j["isolated_point"] = *rep.isolated_point;
  j["per_scale"] = per_scale_json(rep.trace);
  return j.dump(2) + "\n";
}

namespace {

std::string csv_rows(const std::vector<std::pair<double, double>>& rows,
                     bool scale_is_direction) {
  std::string out = "direction_index,t,value\n";
  char buf[96];
  for (const auto& [s, v] : rows) {
    if (scale_is_direction)
      std::snprintf(buf, sizeof buf, "%d,0,%.17g\n", static_cast<int>(s), v);
    else
      std::snprintf(buf, sizeof buf, "0,%.17g,%.17g\n", s, v);
    out += buf;
  }
  return out;
}

}  // namespace

std::string per_scale_csv(const LimitEstimate& est, bool scale_is_direction) {
  return csv_rows(est.per_scale, scale_is_direction);
}

std::string trace_csv(const RegularityReport& rep) { return csv_rows(rep.trace, false); }

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void emit_report(const std::string& out_dir, const std::string& name, const std::string& json_text,
                 const std::string& csv_text) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir.empty() ? "." : out_dir);
  write_atomic((dir / (name + ".json")).string(), json_text);
  if (!csv_text.empty()) write_atomic((dir / (name + ".csv")).string(), csv_text);
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  json meta;
  meta["written_unix_ms"] = now;
  write_atomic((dir / (name + ".meta.json")).string(), meta.dump(2) + "\n");
}

}  // namespace holderreg::io
