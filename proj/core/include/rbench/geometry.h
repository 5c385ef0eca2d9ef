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

#ifndef RBENCH_GEOMETRY_H_
#define RBENCH_GEOMETRY_H_

namespace rbench {

// Axis-aligned box in COCO convention: (x, y) is the top-left corner and
// (w, h) are the extents, all in pixels. Construction rejects degenerate or
// non-finite boxes, so every live instance satisfies w > 0 and h > 0.
class BoundingBox {
 public:
  // Throws InvalidArgument when w <= 0, h <= 0 or any field is not finite.
  BoundingBox(double x, double y, double w, double h);

  double x() const { return x_; }
  double y() const { return y_; }
  double w() const { return w_; }
  double h() const { return h_; }
  double right() const { return x_ + w_; }
  double bottom() const { return y_ + h_; }

  BoundingBox Translated(double dx, double dy) const;

  // True when the box lies inside [0, width] x [0, height], allowing each
  // edge to overshoot by tolerance pixels.
  bool WithinImage(double width, double height, double tolerance = 1.0) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_;
  double y_;
  double w_;
  double h_;
};

double Area(const BoundingBox& b);

double IntersectionArea(const BoundingBox& a, const BoundingBox& b);

// Intersection over union in [0, 1]; 0 for disjoint boxes.
double Iou(const BoundingBox& a, const BoundingBox& b);

}  // namespace rbench

#endif  // RBENCH_GEOMETRY_H_
