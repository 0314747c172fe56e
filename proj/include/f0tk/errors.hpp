// include/f0tk/errors.hpp

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

#ifndef F0TK_ERRORS_HPP_
#define F0TK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace f0tk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed file containers (WAV headers, model files, CSV cells).
struct FormatError : Error {
  using Error::Error;
};

/// Invalid arguments or configuration values.
struct ParameterError : Error {
  using Error::Error;
};

/// Inputs that are structurally fine but unusable (silent speech, empty batch).
struct DataError : Error {
  using Error::Error;
};

/// Matrix/vector shape mismatches.
struct DimensionError : Error {
  using Error::Error;
};

/// Input fed to a model it was not built for (wrong rate, wrong feature dim).
struct ModelMismatchError : Error {
  using Error::Error;
};

/// Non-finite training loss.
struct DivergenceError : Error {
  using Error::Error;
};

/// Manifest / experiment configuration problems.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace f0tk

#endif  // F0TK_ERRORS_HPP_
