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

#ifndef PST_TYPES_HPP_
#define PST_TYPES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace pst {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tall matrix whose columns are mutually orthonormal.  Functions taking a
// BasisMatrix rely on that invariant; factories in model.hpp and
// linalg.hpp guarantee it.
using BasisMatrix = Matrix;

// Every stochastic routine takes an explicit generator so that runs are
// reproducible from a single seed.
using Rng = std::mt19937_64;

// Seed for the index-th independent stream derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return base + index;
}

}  // namespace pst

#endif  // PST_TYPES_HPP_
