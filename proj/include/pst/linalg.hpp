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

#ifndef PST_LINALG_HPP_
#define PST_LINALG_HPP_

#include "pst/types.hpp"

namespace pst {

// True when m'm = I within `tol` (max absolute entry of m'm - I).
bool is_orthonormal(const Matrix& m, double tol = 1e-10);

// Orthonormal basis of range(m) via Householder QR.  Columns are sign-fixed
// so the diagonal of R is nonnegative, which makes the result a
// deterministic function of the input (QR is unique up to column signs when
// m has full column rank).  Throws RankDeficient when it does not.
BasisMatrix orthonormalize(const Matrix& m);

// Solves w x = rhs for symmetric positive definite w.  If the condition
// number estimate exceeds 1e12 a ridge of 1e-10 * trace(w)/n is added to the
// diagonal and the solve is repeated; a singular (or indefinite) w raises
// RankDeficient.
Vector solve_spd_ridge(const Matrix& w, const Vector& rhs);

}  // namespace pst

#endif  // PST_LINALG_HPP_
