#pragma once

#include <array>

namespace speaq {

/// Axis-aligned box in corner format, coordinates normalized to [0, 1].
struct BoundingBox {
  double x_min{0.0};
  double y_min{0.0};
  double x_max{0.0};
  double y_max{0.0};

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  /// (cx, cy, w, h) form used by regression costs.
  std::array<double, 4> center_form() const {
    return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0, width(), height()};
  }

  /// Corner order and [0, 1] range. Zero-area boxes are valid.
  bool valid() const {
    return x_min <= x_max && y_min <= y_max && x_min >= 0.0 && y_min >= 0.0 &&
           x_max <= 1.0 && y_max <= 1.0;
  }

  bool operator==(const BoundingBox&) const = default;
};

/// Intersection over union; 0 when the union has zero area.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Generalized IoU: iou minus the enclosing-box area not covered by the
/// union, as a fraction of the enclosing-box area. Range (-1, 1].
double giou(const BoundingBox& a, const BoundingBox& b);

/// Sum of absolute differences of the center-form coordinates.
double l1_box_distance(const BoundingBox& a, const BoundingBox& b);

}  // namespace speaq
