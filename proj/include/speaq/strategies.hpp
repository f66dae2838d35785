#pragma once

#include <string>
#include <utility>
#include <vector>

#include "speaq/cost_model.hpp"

namespace speaq {

enum class RelationFn { Min, Mean, Max };

RelationFn relation_fn_from_string(const std::string& name);
std::string to_string(RelationFn fn);

/// Parameters of the quality-aware duplication count.
struct QualityConfig {
  int k{5};
  double lambda_rel{-0.5};
  RelationFn relation_fn{RelationFn::Max};
};

/// Per-prediction quality scores for one GT: subject IoU, object IoU,
/// predicted probability of the GT predicate, and the combined vector
/// v[j] = R(v_s[j], v_o[j]) + lambda_rel * v_r[j].
struct QualityVectors {
  std::vector<double> v_s;
  std::vector<double> v_o;
  std::vector<double> v_r;
  std::vector<double> v;
};

/// Throws NullGtError for null GTs.
QualityVectors quality_vectors(const GtTriplet& gt, const std::vector<Prediction>& preds,
                               const QualityConfig& qc);

/// d = floor(max(sum of the k largest combined scores, 1)); ties at the
/// k-th position keep the lower index. Always >= 1.
int compute_d(const QualityVectors& qv, const QualityConfig& qc);

/// Duplication counts for every GT via quality_vectors + compute_d.
std::vector<int> duplication_counts(const std::vector<GtTriplet>& gts,
                                    const std::vector<Prediction>& preds,
                                    const QualityConfig& qc);

/// GT set expanded to n_q rows: each GT repeated d times (after capacity
/// clipping), then null padding. origin[i] is the source GT of row i, or -1
/// for padding; d holds the post-clipping counts.
struct AugmentedGtSet {
  std::vector<GtTriplet> rows;
  std::vector<int> origin;
  std::vector<int> d;
};

/// Ungrouped: one capacity domain covering all n_q slots.
AugmentedGtSet augment_gt_set(const std::vector<GtTriplet>& gts, std::vector<int> d, int n_q);

/// Grouped: each query group is its own capacity domain for the GTs whose
/// predicate falls in it. Clipping decrements the largest d > 1 first (ties
/// to the lower GT index); throws CapacityError when a domain holds more
/// GTs than queries even at d = 1.
AugmentedGtSet augment_gt_set(const std::vector<GtTriplet>& gts, std::vector<int> d,
                              const PredicateGrouping& pg, const QueryGrouping& qg);

enum class Strategy { Single, Iou, Agnostic, Speaq };

Strategy strategy_from_string(const std::string& name);
std::string to_string(Strategy s);

/// Outcome of one assignment strategy on one scene.
struct AssignmentResult {
  Strategy strategy{Strategy::Single};
  std::vector<std::pair<int, int>> pairs;  // (gt index, query index)
  std::vector<int> d;                      // per original GT
  double total_cost{0.0};
};

/// Quality-aware multi-assignment under groupwise specialization: adaptive
/// d per GT, grouped cost matrix, exact solve.
AssignmentResult speaq_assign(const std::vector<GtTriplet>& gts,
                              const std::vector<Prediction>& preds, const PredicateGrouping& pg,
                              const QueryGrouping& qg, const CostWeights& w,
                              const QualityConfig& qc);

/// Conventional one-to-one assignment (d = 1, no groups).
AssignmentResult single_assign(const std::vector<GtTriplet>& gts,
                               const std::vector<Prediction>& preds, const CostWeights& w);

/// Multi-assignment with the same d for every GT; grouped only when both
/// groupings are supplied.
AssignmentResult agnostic_multi_assign(const std::vector<GtTriplet>& gts,
                                       const std::vector<Prediction>& preds,
                                       const CostWeights& w, int d_const,
                                       const PredicateGrouping* pg = nullptr,
                                       const QueryGrouping* qg = nullptr);

/// Threshold heuristic: a prediction whose subject and object IoU with some
/// GT both exceed the threshold pairs with the GT of highest min-IoU; a GT
/// left without pairs falls back to its best still-unassigned prediction.
/// Not a bijection and no cost objective (total_cost is 0).
AssignmentResult iou_assign(const std::vector<GtTriplet>& gts,
                            const std::vector<Prediction>& preds, double iou_threshold);

}  // namespace speaq
