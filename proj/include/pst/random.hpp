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

#ifndef PST_RANDOM_HPP_
#define PST_RANDOM_HPP_

#include "pst/types.hpp"

namespace pst {

// Standard normal fills.  Entries are drawn in column-major order with a
// fresh distribution object per call, so the stream consumed from `rng` is
// a pure function of the requested shape.
Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);
Vector gaussian_vector(Index size, Rng& rng);

}  // namespace pst

#endif  // PST_RANDOM_HPP_
