// Copyright 2026 The Rankopt Authors
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

// CPLEX-style LP text for MathProgram.
//
// The writer emits every variable in the Bounds section in id order, rows in
// order, and numbers in shortest round-trip form, so the output is byte
// stable. The reader accepts that output plus the usual variants (Minimize,
// Binaries, one-sided bounds, "<" for "<=") and restores variable tags from
// the names x_i, y_k_l, z_s and q_k.

#ifndef RANKOPT_LP_FORMAT_H_
#define RANKOPT_LP_FORMAT_H_

#include <string>
#include <string_view>

#include "rankopt/math_program.h"

namespace rankopt {

std::string WriteLpFormat(const MathProgram& p);

// Throws InvalidInput on malformed text. A Minimize objective is negated.
MathProgram ParseLpFormat(std::string_view text);

// Shortest decimal that reads back to the same double; "inf"/"-inf".
std::string FormatNumber(double v);

}  // namespace rankopt

#endif  // RANKOPT_LP_FORMAT_H_
