#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speaq/rng.hpp"
#include "speaq/strategies.hpp"

namespace speaq::sim {

/// Synthetic-scene generator settings. Defaults are the shipped
/// configuration used by the comparison reports.
struct ScenarioConfig {
  int n_predicates{50};
  int n_entity_classes{30};
  int n_q{64};
  int n_g{4};
  double zipf_exponent{1.2};
  int scenes{128};
  int gt_per_scene_min{2};
  int gt_per_scene_max{6};
  int candidates_per_gt_min{2};
  int candidates_per_gt_max{5};
  double box_jitter_sigma{0.02};
  double class_temperature{0.2};
  double promising_iou_threshold{0.6};
  std::uint64_t seed{42};
  QualityConfig quality{};
  CostWeights weights{};

  void validate() const;  // throws ConfigError
};

struct Scene {
  std::vector<GtTriplet> gts;
  std::vector<Prediction> preds;
};

/// Normalized power-law class proportions p(c) proportional to (c+1)^-s.
/// Stands in for the long-tailed predicate distribution of real data.
std::vector<double> zipf_proportions(int n, double exponent);

/// Values derived once per config: the predicate sampling distribution and
/// the groupings it induces.
struct SceneContext {
  std::vector<double> predicate_cdf;
  PredicateGrouping pg;
  QueryGrouping qg;
};

SceneContext make_scene_context(const ScenarioConfig& cfg);

/// Draws one scene. Candidate predictions sit in query slots of their GT's
/// predicate group (a trained grouped model emits group-consistent
/// predictions); leftover slots become background predictions.
Scene generate_scene(Rng& rng, const ScenarioConfig& cfg, const SceneContext& ctx);
Scene generate_scene(Rng& rng, const ScenarioConfig& cfg);

/// A prediction is promising for iou_t when its argmax subject, object and
/// predicate classes all match some GT whose subject and object IoU with it
/// both exceed iou_t.
bool is_promising(const Prediction& pred, const std::vector<GtTriplet>& gts, double iou_t);

/// Fraction of promising predictions that the assignment left unassigned;
/// 0 when nothing is promising.
double suppressed_promising_ratio(const std::vector<GtTriplet>& gts,
                                  const std::vector<Prediction>& preds,
                                  const AssignmentResult& result, double iou_t);

/// Strategy list plus the knobs individual strategies need.
struct ComparisonOptions {
  std::vector<Strategy> strategies{Strategy::Iou, Strategy::Single, Strategy::Agnostic,
                                   Strategy::Speaq};
  int agnostic_d{3};
  double iou_assign_threshold{0.5};
};

/// Per-strategy aggregate diagnostics (arithmetic means over scenes).
struct StrategyMetrics {
  Strategy strategy{Strategy::Single};
  std::map<double, double> suppressed_promising_ratio;  // threshold -> ratio
  double avg_d{0.0};
  double avg_gts_per_query{0.0};
  std::vector<std::vector<double>> per_group_cross_tab;  // [gt group][query group]
  std::vector<double> assigned_gt_freq_per_group;
};

struct SimulationReport {
  ScenarioConfig config;
  ComparisonOptions options;
  std::vector<double> gt_group_freq;
  std::vector<int> query_group_counts;
  std::vector<StrategyMetrics> strategies;
};

/// Runs every strategy on the same scenes and averages the diagnostics.
/// Scene s draws from Rng::for_stream(cfg.seed, s) and aggregation runs in
/// scene-index order, so the report does not depend on `threads`.
SimulationReport run_comparison(const ScenarioConfig& cfg, const ComparisonOptions& options,
                                int threads = 1);

}  // namespace speaq::sim
