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

#include "rbench/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rbench/error.h"

namespace rbench {

BoundingBox::BoundingBox(double x, double y, double w, double h)
    : x_(x), y_(y), w_(w), h_(h) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(w) ||
      !std::isfinite(h)) {
    throw InvalidArgument("bounding box has a non-finite field");
  }
  if (w <= 0.0 || h <= 0.0) {
    std::ostringstream msg;
    msg << "degenerate bounding box (w=" << w << ", h=" << h << ")";
    throw InvalidArgument(msg.str());
  }
}

BoundingBox BoundingBox::Translated(double dx, double dy) const {
  return BoundingBox(x_ + dx, y_ + dy, w_, h_);
}

bool BoundingBox::WithinImage(double width, double height,
                              double tolerance) const {
  return x_ >= -tolerance && y_ >= -tolerance &&
         right() <= width + tolerance && bottom() <= height + tolerance;
}

double Area(const BoundingBox& b) { return b.w() * b.h(); }

double IntersectionArea(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.x(), b.x());
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.y(), b.y());
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  return iw * ih;
}

double Iou(const BoundingBox& a, const BoundingBox& b) {
  if (a == b) return 1.0;
  const double inter = IntersectionArea(a, b);
  if (inter == 0.0) return 0.0;
  const double uni = Area(a) + Area(b) - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace rbench
