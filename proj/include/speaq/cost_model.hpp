#pragma once

#include <optional>
#include <vector>

#include "speaq/assignment.hpp"
#include "speaq/geometry.hpp"
#include "speaq/grouping.hpp"

namespace speaq {

/// A ground-truth (subject, predicate, object) triplet, or the null marker
/// padded onto the GT set. Null triplets carry no boxes or classes.
struct GtTriplet {
  BoundingBox subject_box;
  BoundingBox object_box;
  std::optional<BoundingBox> predicate_box;
  int subject_class{-1};
  int object_class{-1};
  int predicate_class{-1};
  bool is_null{false};

  static GtTriplet null_triplet() {
    GtTriplet t;
    t.is_null = true;
    return t;
  }
};

/// One query's output: boxes plus class-probability vectors. The last entry
/// of each probability vector is the no-object class.
struct Prediction {
  BoundingBox subject_box;
  BoundingBox object_box;
  std::optional<BoundingBox> predicate_box;
  std::vector<double> subject_probs;
  std::vector<double> object_probs;
  std::vector<double> predicate_probs;
  int query_index{0};
};

/// Probability vectors must be nonnegative and sum to 1 within 1e-6.
bool valid_probability_vector(const std::vector<double>& probs);

/// Weights shared by the subject, predicate and object cost terms.
struct CostWeights {
  double w_cls{1.0};
  double w_l1{5.0};
  double w_giou{2.0};
  bool include_predicate_box{false};
};

/// w_cls * (-probs[class_id]) + w_l1 * L1 + w_giou * (1 - GIoU).
/// The classification term is the negative predicted probability.
double entity_cost(int class_id, const BoundingBox& gt_box, const std::vector<double>& probs,
                   const BoundingBox& pred_box, const CostWeights& w);

/// Matching cost between a GT triplet and a prediction: 0 for null GTs,
/// otherwise the sum of subject, predicate and object costs. Predicate box
/// terms apply only when enabled and both sides carry a predicate box.
double match_cost(const GtTriplet& gt, const Prediction& pred, const CostWeights& w);

/// Entry (i, j) = match_cost(gts[i], preds[j]), plus the grouping cost when
/// groupings are supplied (which makes cross-group entries forbidden).
/// Both lists must have equal length.
CostMatrix build_cost_matrix(const std::vector<GtTriplet>& gts,
                             const std::vector<Prediction>& preds, const CostWeights& w,
                             const PredicateGrouping* pg = nullptr,
                             const QueryGrouping* qg = nullptr);

/// Per-component training loss (subject, predicate, object).
struct LossTriple {
  double subject{0.0};
  double predicate{0.0};
  double object{0.0};

  double total() const { return subject + predicate + object; }
};

/// Cross-entropy against the target class (the no-object class for null
/// GTs) plus box regression terms for non-null GTs. Diagnostics only; no
/// gradients are produced.
LossTriple total_loss(const GtTriplet& gt, const Prediction& pred, const CostWeights& lw);

}  // namespace speaq
