#include "speaq/cost_model.hpp"

#include <cmath>
#include <string>

#include "speaq/errors.hpp"

namespace speaq {

namespace {

constexpr double kLossEpsilon = 1e-12;

void check_class(int class_id, const std::vector<double>& probs, const char* what) {
  if (class_id < 0 || class_id >= static_cast<int>(probs.size()))
    throw UnknownClassError(std::string(what) + " class " + std::to_string(class_id) +
                            " outside a class space of size " + std::to_string(probs.size()));
}

double box_regression(const BoundingBox& gt_box, const BoundingBox& pred_box,
                      const CostWeights& w) {
  return w.w_l1 * l1_box_distance(gt_box, pred_box) + w.w_giou * (1.0 - giou(gt_box, pred_box));
}

double cross_entropy(int target, const std::vector<double>& probs, const char* what) {
  check_class(target, probs, what);
  return -std::log(probs[target] + kLossEpsilon);
}

}  // namespace

bool valid_probability_vector(const std::vector<double>& probs) {
  if (probs.empty()) return false;
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= 1e-6;
}

double entity_cost(int class_id, const BoundingBox& gt_box, const std::vector<double>& probs,
                   const BoundingBox& pred_box, const CostWeights& w) {
  check_class(class_id, probs, "entity");
  return w.w_cls * (-probs[class_id]) + box_regression(gt_box, pred_box, w);
}

double match_cost(const GtTriplet& gt, const Prediction& pred, const CostWeights& w) {
  if (gt.is_null) return 0.0;

  double cost = entity_cost(gt.subject_class, gt.subject_box, pred.subject_probs,
                            pred.subject_box, w);
  cost += entity_cost(gt.object_class, gt.object_box, pred.object_probs, pred.object_box, w);

  check_class(gt.predicate_class, pred.predicate_probs, "predicate");
  cost += w.w_cls * (-pred.predicate_probs[gt.predicate_class]);
  if (w.include_predicate_box && gt.predicate_box.has_value() && pred.predicate_box.has_value())
    cost += box_regression(*gt.predicate_box, *pred.predicate_box, w);
  return cost;
}

CostMatrix build_cost_matrix(const std::vector<GtTriplet>& gts,
                             const std::vector<Prediction>& preds, const CostWeights& w,
                             const PredicateGrouping* pg, const QueryGrouping* qg) {
  if (gts.size() != preds.size())
    throw LengthMismatchError("build_cost_matrix: " + std::to_string(gts.size()) +
                              " GT slots vs " + std::to_string(preds.size()) + " predictions");
  if ((pg == nullptr) != (qg == nullptr))
    throw ConfigError("build_cost_matrix: predicate and query groupings must come together");

  const int n = static_cast<int>(gts.size());
  CostMatrix costs(n);
  for (int i = 0; i < n; ++i) {
    std::optional<int> gt_group;
    if (pg != nullptr && !gts[i].is_null) gt_group = pg->group_of(gts[i].predicate_class);
    for (int j = 0; j < n; ++j) {
      double entry = match_cost(gts[i], preds[j], w);
      if (qg != nullptr) {
        const double group_term = grouping_cost(gt_group, qg->group_of(preds[j].query_index));
        entry = is_forbidden(group_term) ? kForbidden : entry + group_term;
      }
      costs.set(i, j, entry);
    }
  }
  return costs;
}

LossTriple total_loss(const GtTriplet& gt, const Prediction& pred, const CostWeights& lw) {
  LossTriple loss;
  if (gt.is_null) {
    // Null GTs target the no-object class, which sits at the last index.
    loss.subject = cross_entropy(static_cast<int>(pred.subject_probs.size()) - 1,
                                 pred.subject_probs, "subject");
    loss.predicate = cross_entropy(static_cast<int>(pred.predicate_probs.size()) - 1,
                                   pred.predicate_probs, "predicate");
    loss.object = cross_entropy(static_cast<int>(pred.object_probs.size()) - 1,
                                pred.object_probs, "object");
    return loss;
  }

  loss.subject = cross_entropy(gt.subject_class, pred.subject_probs, "subject") +
                 box_regression(gt.subject_box, pred.subject_box, lw);
  loss.object = cross_entropy(gt.object_class, pred.object_probs, "object") +
                box_regression(gt.object_box, pred.object_box, lw);
  loss.predicate = cross_entropy(gt.predicate_class, pred.predicate_probs, "predicate");
  if (lw.include_predicate_box && gt.predicate_box.has_value() && pred.predicate_box.has_value())
    loss.predicate += box_regression(*gt.predicate_box, *pred.predicate_box, lw);
  return loss;
}

}  // namespace speaq
