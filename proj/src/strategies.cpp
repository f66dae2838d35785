#include "speaq/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "speaq/errors.hpp"

namespace speaq {

RelationFn relation_fn_from_string(const std::string& name) {
  if (name == "min") return RelationFn::Min;
  if (name == "mean") return RelationFn::Mean;
  if (name == "max") return RelationFn::Max;
  throw ConfigError("unknown relation function '" + name + "' (expected min|mean|max)");
}

std::string to_string(RelationFn fn) {
  switch (fn) {
    case RelationFn::Min: return "min";
    case RelationFn::Mean: return "mean";
    case RelationFn::Max: return "max";
  }
  return "max";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "single") return Strategy::Single;
  if (name == "iou") return Strategy::Iou;
  if (name == "agnostic") return Strategy::Agnostic;
  if (name == "speaq") return Strategy::Speaq;
  throw ConfigError("unknown strategy '" + name + "' (expected single|iou|agnostic|speaq)");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Single: return "single";
    case Strategy::Iou: return "iou";
    case Strategy::Agnostic: return "agnostic";
    case Strategy::Speaq: return "speaq";
  }
  return "single";
}

namespace {

double relate(RelationFn fn, double a, double b) {
  switch (fn) {
    case RelationFn::Min: return std::min(a, b);
    case RelationFn::Mean: return (a + b) / 2.0;
    case RelationFn::Max: return std::max(a, b);
  }
  return std::max(a, b);
}

}  // namespace

QualityVectors quality_vectors(const GtTriplet& gt, const std::vector<Prediction>& preds,
                               const QualityConfig& qc) {
  if (gt.is_null) throw NullGtError("quality_vectors: GT is null");

  QualityVectors qv;
  const std::size_t n = preds.size();
  qv.v_s.reserve(n);
  qv.v_o.reserve(n);
  qv.v_r.reserve(n);
  qv.v.reserve(n);
  for (const Prediction& pred : preds) {
    if (gt.predicate_class < 0 ||
        gt.predicate_class >= static_cast<int>(pred.predicate_probs.size()))
      throw UnknownClassError("quality_vectors: predicate class " +
                              std::to_string(gt.predicate_class) + " out of range");
    const double vs = iou(gt.subject_box, pred.subject_box);
    const double vo = iou(gt.object_box, pred.object_box);
    const double vr = pred.predicate_probs[gt.predicate_class];
    qv.v_s.push_back(vs);
    qv.v_o.push_back(vo);
    qv.v_r.push_back(vr);
    qv.v.push_back(relate(qc.relation_fn, vs, vo) + qc.lambda_rel * vr);
  }
  return qv;
}

int compute_d(const QualityVectors& qv, const QualityConfig& qc) {
  if (qc.k < 1) throw ConfigError("compute_d: k must be >= 1");

  std::vector<int> order(qv.v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return qv.v[a] > qv.v[b]; });

  double sum = 0.0;
  const std::size_t take = std::min<std::size_t>(qc.k, order.size());
  for (std::size_t i = 0; i < take; ++i) sum += qv.v[order[i]];
  return static_cast<int>(std::floor(std::max(sum, 1.0)));
}

std::vector<int> duplication_counts(const std::vector<GtTriplet>& gts,
                                    const std::vector<Prediction>& preds,
                                    const QualityConfig& qc) {
  std::vector<int> d;
  d.reserve(gts.size());
  for (const GtTriplet& gt : gts) d.push_back(compute_d(quality_vectors(gt, preds, qc), qc));
  return d;
}

namespace {

// Shrinks the d values of one capacity domain until their sum fits, largest
// first, ties to the lower GT index. Every d stays >= 1.
void clip_domain(std::vector<int>& d, const std::vector<int>& members, int capacity) {
  if (static_cast<int>(members.size()) > capacity)
    throw CapacityError("augment_gt_set: " + std::to_string(members.size()) +
                        " GTs exceed a capacity of " + std::to_string(capacity));
  long long sum = 0;
  for (int g : members) sum += d[g];
  while (sum > capacity) {
    int pick = -1;
    for (int g : members) {
      if (d[g] > 1 && (pick == -1 || d[g] > d[pick])) pick = g;
    }
    // members.size() <= capacity guarantees a d > 1 exists here
    --d[pick];
    --sum;
  }
}

AugmentedGtSet assemble(const std::vector<GtTriplet>& gts, std::vector<int> d, int n_q) {
  AugmentedGtSet out;
  out.rows.reserve(n_q);
  out.origin.reserve(n_q);
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (int copy = 0; copy < d[g]; ++copy) {
      out.rows.push_back(gts[g]);
      out.origin.push_back(static_cast<int>(g));
    }
  }
  while (static_cast<int>(out.rows.size()) < n_q) {
    out.rows.push_back(GtTriplet::null_triplet());
    out.origin.push_back(-1);
  }
  out.d = std::move(d);
  return out;
}

void check_d(const std::vector<GtTriplet>& gts, const std::vector<int>& d) {
  if (gts.size() != d.size())
    throw LengthMismatchError("augment_gt_set: one d per GT required");
  for (int value : d) {
    if (value < 1) throw ConfigError("augment_gt_set: every d must be >= 1");
  }
}

}  // namespace

AugmentedGtSet augment_gt_set(const std::vector<GtTriplet>& gts, std::vector<int> d, int n_q) {
  check_d(gts, d);
  std::vector<int> members(gts.size());
  std::iota(members.begin(), members.end(), 0);
  clip_domain(d, members, n_q);
  return assemble(gts, std::move(d), n_q);
}

AugmentedGtSet augment_gt_set(const std::vector<GtTriplet>& gts, std::vector<int> d,
                              const PredicateGrouping& pg, const QueryGrouping& qg) {
  check_d(gts, d);
  std::vector<std::vector<int>> members(qg.group_count());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gts[g].is_null) throw NullGtError("augment_gt_set: input GTs must be non-null");
    members[pg.group_of(gts[g].predicate_class)].push_back(static_cast<int>(g));
  }
  for (int group = 0; group < qg.group_count(); ++group)
    clip_domain(d, members[group], qg.counts()[group]);
  return assemble(gts, std::move(d), qg.total_queries());
}

namespace {

AssignmentResult solve(Strategy strategy, const AugmentedGtSet& augmented,
                       const std::vector<Prediction>& preds, const CostWeights& w,
                       const PredicateGrouping* pg, const QueryGrouping* qg) {
  if (preds.empty()) {
    AssignmentResult empty;
    empty.strategy = strategy;
    empty.d = augmented.d;
    return empty;
  }
  const CostMatrix costs = build_cost_matrix(augmented.rows, preds, w, pg, qg);
  const Assignment assignment = hungarian(costs);

  AssignmentResult result;
  result.strategy = strategy;
  result.d = augmented.d;
  result.total_cost = assignment.total_cost;
  for (std::size_t row = 0; row < augmented.rows.size(); ++row) {
    if (augmented.origin[row] >= 0)
      result.pairs.emplace_back(augmented.origin[row], preds[assignment.perm[row]].query_index);
  }
  return result;
}

}  // namespace

AssignmentResult speaq_assign(const std::vector<GtTriplet>& gts,
                              const std::vector<Prediction>& preds, const PredicateGrouping& pg,
                              const QueryGrouping& qg, const CostWeights& w,
                              const QualityConfig& qc) {
  if (static_cast<int>(preds.size()) != qg.total_queries())
    throw LengthMismatchError("speaq_assign: prediction count differs from the query grouping");
  const AugmentedGtSet augmented =
      augment_gt_set(gts, duplication_counts(gts, preds, qc), pg, qg);
  return solve(Strategy::Speaq, augmented, preds, w, &pg, &qg);
}

AssignmentResult single_assign(const std::vector<GtTriplet>& gts,
                               const std::vector<Prediction>& preds, const CostWeights& w) {
  const AugmentedGtSet augmented =
      augment_gt_set(gts, std::vector<int>(gts.size(), 1), static_cast<int>(preds.size()));
  return solve(Strategy::Single, augmented, preds, w, nullptr, nullptr);
}

AssignmentResult agnostic_multi_assign(const std::vector<GtTriplet>& gts,
                                       const std::vector<Prediction>& preds,
                                       const CostWeights& w, int d_const,
                                       const PredicateGrouping* pg, const QueryGrouping* qg) {
  if (d_const < 1) throw ConfigError("agnostic_multi_assign: d_const must be >= 1");
  if ((pg == nullptr) != (qg == nullptr))
    throw ConfigError("agnostic_multi_assign: groupings must come together");

  std::vector<int> d(gts.size(), d_const);
  const AugmentedGtSet augmented =
      pg != nullptr ? augment_gt_set(gts, std::move(d), *pg, *qg)
                    : augment_gt_set(gts, std::move(d), static_cast<int>(preds.size()));
  return solve(Strategy::Agnostic, augmented, preds, w, pg, qg);
}

AssignmentResult iou_assign(const std::vector<GtTriplet>& gts,
                            const std::vector<Prediction>& preds, double iou_threshold) {
  AssignmentResult result;
  result.strategy = Strategy::Iou;
  result.d.assign(gts.size(), 0);

  std::vector<char> taken(preds.size(), 0);
  for (std::size_t j = 0; j < preds.size(); ++j) {
    int best_gt = -1;
    double best_quality = 0.0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (gts[g].is_null) continue;
      const double quality = std::min(iou(gts[g].subject_box, preds[j].subject_box),
                                      iou(gts[g].object_box, preds[j].object_box));
      if (quality > iou_threshold && (best_gt < 0 || quality > best_quality)) {
        best_gt = static_cast<int>(g);
        best_quality = quality;
      }
    }
    if (best_gt >= 0) {
      result.pairs.emplace_back(best_gt, preds[j].query_index);
      ++result.d[best_gt];
      taken[j] = 1;
    }
  }

  // A GT no prediction cleared the threshold for still trains one
  // prediction: its best min-IoU among the unassigned ones.
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (gts[g].is_null || result.d[g] > 0) continue;
    int best_j = -1;
    double best_quality = -1.0;
    for (std::size_t j = 0; j < preds.size(); ++j) {
      if (taken[j]) continue;
      const double quality = std::min(iou(gts[g].subject_box, preds[j].subject_box),
                                      iou(gts[g].object_box, preds[j].object_box));
      if (quality > best_quality) {
        best_j = static_cast<int>(j);
        best_quality = quality;
      }
    }
    if (best_j >= 0) {
      result.pairs.emplace_back(static_cast<int>(g), preds[best_j].query_index);
      ++result.d[g];
      taken[best_j] = 1;
    }
  }
  return result;
}

}  // namespace speaq
