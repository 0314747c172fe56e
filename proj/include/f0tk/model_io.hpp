// include/f0tk/model_io.hpp

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

#ifndef F0TK_MODEL_IO_HPP_
#define F0TK_MODEL_IO_HPP_

#include <string>

#include "f0tk/tracker.hpp"

namespace f0tk {

// Versioned binary container: "F0TK" magic, format version, kind tag,
// framing/context configs, norm stats, quantizer + HMM (dnn_hmm), then the
// layer shapes and weights as little-endian 64-bit floats. Round-trips are
// bit-identical.
constexpr std::uint32_t kModelFormatVersion = 1;

void save_model(const TrackerModel& model, const std::string& path);
TrackerModel load_model(const std::string& path);

}  // namespace f0tk

#endif  // F0TK_MODEL_IO_HPP_
