// Copyright 2026 The pst Authors.
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

#ifndef PST_ERRORS_HPP_
#define PST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pst {

// Base class for every error raised by this library.  Catching pst::Error
// is enough to distinguish "this run failed" from a programming bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix/vector shapes that cannot be combined (mismatched rows, r > n, ...).
class InvalidDimension final : public Error {
 public:
  using Error::Error;
};

// A configuration value outside its documented domain.
class InvalidConfig final : public Error {
 public:
  using Error::Error;
};

// Runtime data violating a precondition (negative magnitudes, non-symmetric
// input to an eigensolver, non-orthonormal basis, ...).
class InvalidInput final : public Error {
 public:
  using Error::Error;
};

// The added/changed direction cannot be identified (no energy in the new
// coordinate, or the direction collapsed into the previous subspace).
class DegenerateDirection final : public Error {
 public:
  using Error::Error;
};

// A least-squares system without a unique solution.
class RankDeficient final : public Error {
 public:
  using Error::Error;
};

// The detection statistic is undefined (denominator eigenvalue is zero).
class IndeterminateStatistic final : public Error {
 public:
  using Error::Error;
};

// A relative-error metric whose denominator is zero.
class UndefinedDenominator final : public Error {
 public:
  using Error::Error;
};

}  // namespace pst

#endif  // PST_ERRORS_HPP_
