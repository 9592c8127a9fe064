// Copyright 2026 The spim-sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPIM_ERROR_HPP
#define SPIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spim {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SPIM_DEFINE_ERROR(NAME)                                 \
  class NAME : public Error {                                   \
   public:                                                      \
    explicit NAME(const std::string& what) : Error(what) {}     \
  }

SPIM_DEFINE_ERROR(InvalidInstance);   // bad problem data
SPIM_DEFINE_ERROR(DimensionError);    // mismatched array shapes
SPIM_DEFINE_ERROR(ScheduleError);     // schedule index out of range
SPIM_DEFINE_ERROR(GeometryError);     // invalid SLM / readout geometry
SPIM_DEFINE_ERROR(NotSupported);      // unsupported configuration
SPIM_DEFINE_ERROR(CalibrationError);  // exposure calibration impossible
SPIM_DEFINE_ERROR(InvalidArgument);   // bad argument outside geometry/shape
SPIM_DEFINE_ERROR(TooLarge);          // problem too large for exact methods
SPIM_DEFINE_ERROR(InitError);         // invalid initial solver state

#undef SPIM_DEFINE_ERROR

}  // namespace spim

#endif  // SPIM_ERROR_HPP
