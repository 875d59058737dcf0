#pragma once

#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ferrowrite/errors.hpp"
#include "ferrowrite/experiment.hpp"

namespace ferrowrite::cli {

// Shortest decimal form that parses back to the identical double, so
// rewritten tables are byte-stable and lossless.
inline std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw IoError("table parse: bad number '" + std::string(text) + "'");
  return value;
}

// Fixed column order of every curve-style table.
inline constexpr std::string_view csv_header =
    "T_K,t_reduced,branch,m,M_si,B_eff,M_nmr,discrepancy,"
    "theta_xA,theta_yA,theta_xB,theta_yB,trace_distance";

inline void append_row(std::string& out, const CurvePoint& p) {
  out += format_double(p.temperature);
  out += ',';
  out += format_double(p.t_reduced);
  out += ',';
  out += to_string(p.branch);
  out += ',';
  out += format_double(p.m);
  out += ',';
  out += format_double(p.magnetization);
  out += ',';
  out += format_double(p.b_effective);
  out += ',';
  out += format_double(p.nmr_magnetization);
  out += ',';
  out += format_double(p.discrepancy);
  out += ',';
  out += format_double(p.angles.theta_x_a);
  out += ',';
  out += format_double(p.angles.theta_y_a);
  out += ',';
  out += format_double(p.angles.theta_x_b);
  out += ',';
  out += format_double(p.angles.theta_y_b);
  out += ',';
  out += format_double(p.trace_dist);
  out += '\n';
}

inline std::string curve_csv(std::span<const CurvePoint> points) {
  std::string out{csv_header};
  out += '\n';
  for (const CurvePoint& p : points) append_row(out, p);
  return out;
}

inline nlohmann::ordered_json curve_json_record(const CurvePoint& p) {
  nlohmann::ordered_json rec;
  rec["T_K"] = p.temperature;
  rec["t_reduced"] = p.t_reduced;
  rec["branch"] = to_string(p.branch);
  rec["m"] = p.m;
  rec["M_si"] = p.magnetization;
  rec["B_eff"] = p.b_effective;
  rec["M_nmr"] = p.nmr_magnetization;
  rec["discrepancy"] = p.discrepancy;
  rec["theta_xA"] = p.angles.theta_x_a;
  rec["theta_yA"] = p.angles.theta_y_a;
  rec["theta_xB"] = p.angles.theta_x_b;
  rec["theta_yB"] = p.angles.theta_y_b;
  rec["trace_distance"] = p.trace_dist;
  return rec;
}

inline std::string curve_json(std::span<const CurvePoint> points) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CurvePoint& p : points) arr.push_back(curve_json_record(p));
  return arr.dump(2) + "\n";
}

inline Branch parse_branch(std::string_view text) {
  if (text == "up") return Branch::up;
  if (text == "down") return Branch::down;
  if (text == "single") return Branch::single;
  throw IoError("table parse: unknown branch '" + std::string(text) + "'");
}

// Reads back a curve CSV produced by curve_csv.  Exact inverse for
// finite values because format_double is round-trip safe.
inline std::vector<CurvePoint> parse_curve_csv(std::string_view text) {
  std::vector<CurvePoint> out;
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string_view {
    if (pos >= text.size()) return {};
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    return line;
  };

  const std::string_view header = next_line();
  if (header != csv_header)
    throw IoError("table parse: unexpected header");

  while (pos < text.size()) {
    const std::string_view line = next_line();
    if (line.empty()) continue;
    std::array<std::string_view, 13> fields;
    std::size_t start = 0;
    for (int i = 0; i < 13; ++i) {
      const std::size_t comma = line.find(',', start);
      if (i < 12 && comma == std::string_view::npos)
        throw IoError("table parse: short row");
      fields[i] = line.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start);
      start = comma + 1;
    }
    CurvePoint p;
    p.temperature = parse_double(fields[0]);
    p.t_reduced = parse_double(fields[1]);
    p.branch = parse_branch(fields[2]);
    p.m = parse_double(fields[3]);
    p.magnetization = parse_double(fields[4]);
    p.b_effective = parse_double(fields[5]);
    p.nmr_magnetization = parse_double(fields[6]);
    p.discrepancy = parse_double(fields[7]);
    p.angles.theta_x_a = parse_double(fields[8]);
    p.angles.theta_y_a = parse_double(fields[9]);
    p.angles.theta_x_b = parse_double(fields[10]);
    p.angles.theta_y_b = parse_double(fields[11]);
    p.trace_dist = parse_double(fields[12]);
    out.push_back(p);
  }
  return out;
}

// Resolves a relative output path against FERROWRITE_OUT_DIR when set.
inline std::filesystem::path resolve_out_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* base = std::getenv("FERROWRITE_OUT_DIR"))
      return std::filesystem::path(base) / p;
  }
  return p;
}

// Writes via a sibling temp file plus rename, so a crash mid-write can
// never leave a truncated table under the final name.
inline void write_atomic(const std::filesystem::path& path,
                         std::string_view content) {
  std::error_code ec;
  const std::filesystem::path parent = path.parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent, ec);
    if (ec)
      throw IoError("cannot create directory " + parent.string() + ": " +
                    ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move " + tmp.string() + " into place: " +
                  ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return std::move(buf).str();
}

}  // namespace ferrowrite::cli
