#include "speaq/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace speaq {

namespace {

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

}  // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double giou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  const double base = uni > 0.0 ? inter / uni : 0.0;

  const double enclose_w = std::max(a.x_max, b.x_max) - std::min(a.x_min, b.x_min);
  const double enclose_h = std::max(a.y_max, b.y_max) - std::min(a.y_min, b.y_min);
  const double enclose = enclose_w * enclose_h;
  if (enclose <= 0.0) return base;
  return base - (enclose - uni) / enclose;
}

double l1_box_distance(const BoundingBox& a, const BoundingBox& b) {
  const auto ca = a.center_form();
  const auto cb = b.center_form();
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d += std::abs(ca[i] - cb[i]);
  return d;
}

}  // namespace speaq
