#ifndef FPLAB_IO_HPP
#define FPLAB_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fplab/families.hpp"
#include "fplab/sweep.hpp"

namespace fplab {

inline constexpr const char* kToolVersion = "0.1.0";

enum class OutFormat { Dat, Csv, Json };

inline std::optional<OutFormat> format_from_name(std::string_view name) {
  if (name == "dat") return OutFormat::Dat;
  if (name == "csv") return OutFormat::Csv;
  if (name == "json") return OutFormat::Json;
  return std::nullopt;
}

// Locale-independent decimal rendering with 15 significant digits.
inline std::string format_g15(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 15);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

inline std::string join_angles(const AngleConfig& config) {
  std::string out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out += ',';
    out += format_g15(config[i]);
  }
  return out;
}

// --------------------------------------------------------------------------
// Run manifest: serialized alongside every output file so a run can be
// reproduced from the file pair alone.
// --------------------------------------------------------------------------

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t master_seed = 0;
  double duration_seconds = 0.0;
};

inline void write_manifest(const RunManifest& m, const std::string& out_path) {
  std::ofstream os(out_path + ".manifest");
  if (!os) throw std::runtime_error("cannot write manifest next to " + out_path);
  os << "command " << m.command << "\n";
  for (const auto& [k, v] : m.params) os << k << " " << v << "\n";
  os << "seed " << m.master_seed << "\n";
  os << "version " << kToolVersion << "\n";
  // excluded from byte-level reproducibility comparisons
  os << "duration_seconds " << format_g15(m.duration_seconds) << "\n";
}

// --------------------------------------------------------------------------
// Sweep tables. The .dat header mirrors the plotting-table shape:
// $p$ $f_{min}$ $c$ $d$ der family, with `nan` markers for absent fields.
// --------------------------------------------------------------------------

inline std::string sweep_field_c(const SweepRecord& r) {
  return (r.family.kind == FamilyKind::Y && r.family.alpha)
             ? format_g15(*r.family.alpha)
             : "nan";
}

inline std::string sweep_field_d(const SweepRecord& r) {
  return (r.family.kind == FamilyKind::Z && r.family.alpha)
             ? format_g15(*r.family.alpha)
             : "nan";
}

inline void write_sweep_table(const std::vector<SweepRecord>& records,
                              std::ostream& os, OutFormat format) {
  switch (format) {
    case OutFormat::Dat:
    case OutFormat::Csv: {
      const bool csv = format == OutFormat::Csv;
      const char sep = csv ? ',' : ' ';
      if (csv)
        os << "p,f_min,c,d,der,family\n";
      else
        os << "$p$ $f_{min}$ $c$ $d$ der family\n";
      for (const auto& r : records) {
        os << format_g15(r.p) << sep << (r.failed ? "nan" : format_g15(r.f_min)) << sep
           << sweep_field_c(r) << sep << sweep_field_d(r) << sep
           << (r.dfdp ? format_g15(*r.dfdp) : "nan") << sep
           << family_name(r.family.kind) << "\n";
      }
      break;
    }
    case OutFormat::Json: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : records) {
        nlohmann::json row;
        row["p"] = r.p;
        row["f_min"] = r.failed ? nlohmann::json() : nlohmann::json(r.f_min);
        row["c"] = (r.family.kind == FamilyKind::Y && r.family.alpha)
                       ? nlohmann::json(*r.family.alpha)
                       : nlohmann::json();
        row["d"] = (r.family.kind == FamilyKind::Z && r.family.alpha)
                       ? nlohmann::json(*r.family.alpha)
                       : nlohmann::json();
        row["der"] = r.dfdp ? nlohmann::json(*r.dfdp) : nlohmann::json();
        row["family"] = family_name(r.family.kind);
        row["failed"] = r.failed;
        rows.push_back(std::move(row));
      }
      os << rows.dump(2) << "\n";
      break;
    }
  }
}

// Parses a .dat or .csv sweep table back into records (round-trip checks).
inline std::vector<SweepRecord> parse_sweep_table(std::istream& is, OutFormat format) {
  if (format == OutFormat::Json)
    throw std::invalid_argument("parse_sweep_table: use a JSON parser for json");
  std::vector<SweepRecord> records;
  std::string line;
  bool header = true;
  const char sep = format == OutFormat::Csv ? ',' : ' ';
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) fields.push_back(field);
    if (fields.size() != 6)
      throw std::runtime_error("parse_sweep_table: malformed row: " + line);
    auto num = [](const std::string& s) {
      return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
    };
    SweepRecord r;
    r.p = num(fields[0]);
    r.f_min = num(fields[1]);
    r.failed = fields[1] == "nan";
    auto kind = family_from_name(fields[5]);
    r.family.kind = kind.value_or(FamilyKind::Custom);
    if (fields[2] != "nan") r.family.alpha = num(fields[2]);
    if (fields[3] != "nan") r.family.alpha = num(fields[3]);
    if (fields[4] != "nan") r.dfdp = num(fields[4]);
    records.push_back(std::move(r));
  }
  return records;
}

// --------------------------------------------------------------------------
// Structured key-value reports.
// --------------------------------------------------------------------------

inline void write_minimize_result(const MinimizeResult& r, int n, double p,
                                  std::ostream& os) {
  const FamilyInstance family = classify(r.config, 1e-5);
  os << "n " << n << "\n";
  os << "p " << format_g15(p) << "\n";
  os << "value " << format_g15(r.value) << "\n";
  os << "family " << family_name(family.kind) << "\n";
  os << "alpha " << (family.alpha ? format_g15(*family.alpha) : "nan") << "\n";
  os << "angles " << join_angles(r.config) << "\n";
  os << "restarts_used " << r.restarts_used << "\n";
  os << "failed_restarts " << r.failed_restarts << "\n";
  os << "best_restart_index " << r.best_restart_index << "\n";
  os << "converged " << (r.converged ? 1 : 0) << "\n";
}

inline const char* method_name(TransitionMethod m) {
  return m == TransitionMethod::CrossingBisection ? "crossing-bisection"
                                                  : "derivative-jump";
}

inline void write_transition_reports(const std::vector<TransitionReport>& reports,
                                     std::ostream& os) {
  os << "transitions " << reports.size() << "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& t = reports[i];
    os << "transition." << i << ".p_star " << format_g15(t.p_star) << "\n";
    os << "transition." << i << ".left " << family_name(t.left_family) << "\n";
    os << "transition." << i << ".right " << family_name(t.right_family) << "\n";
    os << "transition." << i << ".method " << method_name(t.method) << "\n";
    os << "transition." << i << ".precision " << format_g15(t.precision) << "\n";
  }
}

}  // namespace fplab

#endif  // FPLAB_IO_HPP
