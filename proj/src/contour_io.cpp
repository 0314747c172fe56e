// src/contour_io.cpp

// Copyright 2026  F0TK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "f0tk/contour_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& s, const std::string& path, long line_no) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) {
    throw FormatError(path + ":" + std::to_string(line_no) + ": non-numeric cell '" + s + "'");
  }
  return v;
}

}  // namespace

F0Contour load_f0_ground_truth(const std::string& path, const ColumnSpec& adapter,
                               double hop_s, double offset_s) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open ground-truth file: " + path);

  F0Contour c;
  c.hop_s = hop_s;
  c.offset_s = offset_s;

  std::string line;
  long line_no = 0;
  long frame = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    const int needed = std::max(adapter.f0_col, adapter.voicing_col);
    if (static_cast<int>(fields.size()) <= needed) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected at least " +
                        std::to_string(needed + 1) + " columns");
    }
    F0Frame f;
    f.frame_index = frame++;
    f.f0_hz = parse_number(fields[adapter.f0_col], path, line_no);
    bool voiced = f.f0_hz > 0.0;
    if (adapter.voicing_col >= 0) {
      voiced = voiced && parse_number(fields[adapter.voicing_col], path, line_no) != 0.0;
    }
    f.voiced = voiced;
    if (!voiced) f.f0_hz = 0.0;
    c.frames.push_back(f);
  }
  return c;
}

void write_ground_truth(const F0Contour& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot create ground-truth file: " + path);
  char buf[64];
  for (const auto& f : c.frames) {
    std::snprintf(buf, sizeof(buf), "%.6f %d\n", f.voiced ? f.f0_hz : 0.0, f.voiced ? 1 : 0);
    os << buf;
  }
}

void write_contour_csv(const F0Contour& c, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot create contour file: " + path);
  os << "time_s,f0_hz,voiced\n";
  char buf[96];
  for (size_t i = 0; i < c.frames.size(); ++i) {
    const auto& f = c.frames[i];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%d\n",
                  c.offset_s + f.frame_index * c.hop_s, f.f0_hz, f.voiced ? 1 : 0);
    os << buf;
  }
}

F0Contour read_contour_csv(const std::string& path, double fallback_hop_s) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open contour file: " + path);

  std::string line;
  long line_no = 0;
  std::vector<double> times;
  std::vector<double> f0s;
  std::vector<bool> voiced;
  while (std::getline(is, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("time_s", 0) == 0) continue;  // header
    std::string csv = line;
    const auto fields = split_fields(csv);
    if (fields.empty()) continue;
    if (fields.size() < 3) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected 3 columns");
    }
    times.push_back(parse_number(fields[0], path, line_no));
    f0s.push_back(parse_number(fields[1], path, line_no));
    voiced.push_back(parse_number(fields[2], path, line_no) != 0.0);
  }

  F0Contour c;
  if (times.empty()) {
    c.hop_s = fallback_hop_s;
    return c;
  }
  c.offset_s = times.front();
  c.hop_s = times.size() >= 2 ? times[1] - times[0] : fallback_hop_s;
  if (c.hop_s <= 0.0) {
    throw FormatError(path + ": cannot recover a positive hop from timestamps");
  }
  for (size_t i = 0; i < times.size(); ++i) {
    F0Frame f;
    f.frame_index = std::lround((times[i] - c.offset_s) / c.hop_s);
    f.voiced = voiced[i] && f0s[i] > 0.0;
    f.f0_hz = f.voiced ? f0s[i] : 0.0;
    c.frames.push_back(f);
  }
  return c;
}

F0Contour align_contour(const F0Contour& c, double hop_s, double offset_s) {
  if (std::abs(c.hop_s - hop_s) > 1e-9 * std::max(1.0, hop_s)) {
    throw DataError("align_contour: hop mismatch (" + std::to_string(c.hop_s) + " vs " +
                    std::to_string(hop_s) + ")");
  }
  const double delta = (offset_s - c.offset_s) / hop_s;
  const long shift = std::lround(delta);
  if (std::abs(delta - shift) > 1e-6) {
    throw DataError("align_contour: offsets differ by a fractional frame");
  }
  F0Contour out;
  out.hop_s = hop_s;
  out.offset_s = offset_s;
  for (const auto& f : c.frames) {
    if (f.frame_index < shift) continue;  // before the target grid start
    F0Frame g = f;
    g.frame_index = f.frame_index - shift;
    out.frames.push_back(g);
  }
  return out;
}

}  // namespace f0tk
