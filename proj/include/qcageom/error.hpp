// Copyright 2026 The qcageom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qcageom {

/// Precondition failure: malformed input, bad labels, out-of-range sites.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant (unit norm, PSD spectrum, target fidelity) was
/// violated beyond tolerance.
class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void fail(const std::string &msg) { throw InvalidArgument(msg); }
inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        fail(msg);
    }
}
} // namespace detail

} // namespace qcageom
