#include <doctest.h>

#include "speaq/geometry.hpp"
#include "speaq/rng.hpp"

using speaq::BoundingBox;
using speaq::giou;
using speaq::iou;
using speaq::l1_box_distance;

namespace {

BoundingBox random_box(speaq::Rng& rng) {
  const double x1 = rng.uniform(), x2 = rng.uniform();
  const double y1 = rng.uniform(), y2 = rng.uniform();
  return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

}  // namespace

TEST_CASE("iou on identical boxes is 1") {
  const BoundingBox box{0.1, 0.1, 0.5, 0.5};
  CHECK(iou(box, box) == doctest::Approx(1.0));
}

TEST_CASE("iou on disjoint boxes is 0") {
  CHECK(iou({0, 0, 0.2, 0.2}, {0.5, 0.5, 0.9, 0.9}) == 0.0);
}

TEST_CASE("iou on partially overlapping boxes") {
  // intersection 0.01, union 0.07
  CHECK(iou({0, 0, 0.2, 0.2}, {0.1, 0.1, 0.3, 0.3}) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("iou of two degenerate boxes is 0") {
  const BoundingBox point{0.5, 0.5, 0.5, 0.5};
  CHECK(iou(point, point) == 0.0);
}

TEST_CASE("giou on identical boxes is 1") {
  const BoundingBox box{0.2, 0.3, 0.6, 0.9};
  CHECK(giou(box, box) == doctest::Approx(1.0));
}

TEST_CASE("giou on disjoint boxes goes negative") {
  // iou 0, union 0.02, enclosing 0.09
  CHECK(giou({0, 0, 0.1, 0.1}, {0.2, 0.2, 0.3, 0.3}) == doctest::Approx(-7.0 / 9.0));
}

TEST_CASE("giou subtracts the uncovered enclosing area") {
  CHECK(giou({0, 0, 0.2, 0.2}, {0.1, 0.1, 0.3, 0.3}) ==
        doctest::Approx(1.0 / 7.0 - 0.02 / 0.09));
}

TEST_CASE("l1 distance on identical boxes is 0") {
  const BoundingBox box{0.1, 0.2, 0.3, 0.4};
  CHECK(l1_box_distance(box, box) == 0.0);
}

TEST_CASE("l1 distance in center form") {
  CHECK(l1_box_distance({0, 0, 0.2, 0.2}, {0.1, 0.1, 0.3, 0.3}) == doctest::Approx(0.2));
  CHECK(l1_box_distance({0, 0, 1, 1}, {0, 0, 0.5, 0.5}) == doctest::Approx(1.5));
}

TEST_CASE("iou is symmetric and bounded, giou never exceeds iou") {
  speaq::Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const BoundingBox a = random_box(rng);
    const BoundingBox b = random_box(rng);
    const double i = iou(a, b);
    const double g = giou(a, b);
    CHECK(i == iou(b, a));
    CHECK(i >= 0.0);
    CHECK(i <= 1.0);
    CHECK(g <= i + 1e-12);
    CHECK(g > -1.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("giou equals iou exactly when the union fills the enclosing box") {
  const BoundingBox a{0.1, 0.1, 0.4, 0.4};
  CHECK(giou(a, a) == iou(a, a));
  // nested boxes: enclosing box equals the outer box, which is the union
  const BoundingBox inner{0.2, 0.2, 0.3, 0.3};
  CHECK(giou(a, inner) == doctest::Approx(iou(a, inner)));
}

TEST_CASE("l1 distance satisfies the triangle inequality") {
  speaq::Rng rng(777);
  for (int trial = 0; trial < 2000; ++trial) {
    const BoundingBox a = random_box(rng);
    const BoundingBox b = random_box(rng);
    const BoundingBox c = random_box(rng);
    CHECK(l1_box_distance(a, c) <= l1_box_distance(a, b) + l1_box_distance(b, c) + 1e-12);
    CHECK(l1_box_distance(a, b) >= 0.0);
  }
}

TEST_CASE("l1 distance is 0 only for equal boxes") {
  const BoundingBox a{0.1, 0.1, 0.3, 0.3};
  const BoundingBox b{0.1, 0.1, 0.3, 0.31};
  CHECK(l1_box_distance(a, b) > 0.0);
}
