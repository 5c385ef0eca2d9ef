// Copyright 2026 The rationale-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RBENCH_VTS_H_
#define RBENCH_VTS_H_

#include <string>

namespace rbench {

// Textual similarity (clamped embedding cosine) and visual-rationale AP, both
// as fractions in [0, 1]. Construction throws InvalidArgument otherwise.
struct VtsInputs {
  VtsInputs(double cos_sim, double ap);

  double cos_sim;
  double ap;
};

// Harmonic mean of cos_sim and ap. Returns 0 when either input is 0.
double Vts(const VtsInputs& in);

// (cos + ap) / 2
double CombineArithmetic(const VtsInputs& in);

// cos * ap
double CombineProduct(const VtsInputs& in);

struct VtsReport {
  double vts = 0.0;
  double arith = 0.0;
  double prod = 0.0;
  double cos_sim = 0.0;
  double ap = 0.0;
  // Both inputs were exactly zero; vts is reported as 0.
  bool degenerate = false;
};

VtsReport FuseVts(const VtsInputs& in);

// Fraction -> percent rounded to two decimals, the way the result tables are
// printed.
double ToPercent(double fraction);
std::string FormatPercent(double fraction);

}  // namespace rbench

#endif  // RBENCH_VTS_H_
