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

#include "rbench/vts.h"

#include <cmath>
#include <cstdio>

#include "rbench/error.h"

namespace rbench {
namespace {

void CheckFraction(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw InvalidArgument(std::string(name) + " must be in [0, 1], got " +
                          std::to_string(v));
  }
}

}  // namespace

VtsInputs::VtsInputs(double cos_sim, double ap) : cos_sim(cos_sim), ap(ap) {
  CheckFraction(cos_sim, "cos_sim");
  CheckFraction(ap, "ap");
}

double Vts(const VtsInputs& in) {
  if (in.cos_sim == 0.0 || in.ap == 0.0) return 0.0;
  return 2.0 * in.cos_sim * in.ap / (in.cos_sim + in.ap);
}

double CombineArithmetic(const VtsInputs& in) {
  return (in.cos_sim + in.ap) / 2.0;
}

double CombineProduct(const VtsInputs& in) { return in.cos_sim * in.ap; }

VtsReport FuseVts(const VtsInputs& in) {
  VtsReport report;
  report.cos_sim = in.cos_sim;
  report.ap = in.ap;
  report.vts = Vts(in);
  report.arith = CombineArithmetic(in);
  report.prod = CombineProduct(in);
  report.degenerate = in.cos_sim == 0.0 && in.ap == 0.0;
  return report;
}

double ToPercent(double fraction) {
  return std::round(fraction * 100.0 * 100.0) / 100.0;
}

std::string FormatPercent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", ToPercent(fraction));
  return buf;
}

}  // namespace rbench
