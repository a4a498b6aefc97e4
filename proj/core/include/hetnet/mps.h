// Copyright 2026 The hetnet Authors
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

#ifndef HETNET_MPS_H_
#define HETNET_MPS_H_

#include <iosfwd>

#include "hetnet/simplex.h"

namespace hetnet {

enum class MpsFormat {
  kFixed,  // classic column positions, 8-char names, 12-char numbers
  kFree,   // whitespace separated, full double precision
};

// Writes `lp` as an MPS model. The objective row is named COST; bounds go to
// the BND set and the right-hand side to RHS.
void WriteMps(const LinearProgram& lp, std::ostream& out,
              MpsFormat format = MpsFormat::kFixed);

// Reads fixed or free MPS (names must not contain spaces). Throws
// std::runtime_error on malformed input.
LinearProgram ReadMps(std::istream& in);

}  // namespace hetnet

#endif  // HETNET_MPS_H_
