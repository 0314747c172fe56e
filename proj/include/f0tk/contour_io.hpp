// include/f0tk/contour_io.hpp

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

#ifndef F0TK_CONTOUR_IO_HPP_
#define F0TK_CONTOUR_IO_HPP_

#include <string>

#include "f0tk/types.hpp"

namespace f0tk {

/// Maps columns of a delimited ground-truth file onto contour fields.
/// voicing_col < 0 derives voicing from f0 > 0.
struct ColumnSpec {
  int f0_col = 0;
  int voicing_col = -1;
};

/// Parses a whitespace- or comma-delimited text file, one row per frame.
/// Rows map in order to frame_index 0, 1, ... A non-positive f0 or a zero
/// voicing flag marks the frame unvoiced. Non-numeric cells raise a
/// FormatError naming the line.
F0Contour load_f0_ground_truth(const std::string& path, const ColumnSpec& adapter,
                               double hop_s, double offset_s = 0.0);

/// Writes the two-column "<f0_hz> <voiced>" ground-truth layout that
/// load_f0_ground_truth reads back with the default adapter.
void write_ground_truth(const F0Contour& c, const std::string& path);

/// Contour CSV: header "time_s,f0_hz,voiced", time_s = offset_s +
/// frame_index * hop_s.
void write_contour_csv(const F0Contour& c, const std::string& path);

/// Reads a contour CSV. hop is recovered from consecutive times (or taken
/// from fallback_hop_s for contours with fewer than two frames).
F0Contour read_contour_csv(const std::string& path, double fallback_hop_s = 0.0);

/// Reindexes `c` onto a grid with the given offset. Hops must match and the
/// offset difference must be a whole number of hops (frames shifted off the
/// front are dropped); anything else is a DataError.
F0Contour align_contour(const F0Contour& c, double hop_s, double offset_s);

}  // namespace f0tk

#endif  // F0TK_CONTOUR_IO_HPP_
