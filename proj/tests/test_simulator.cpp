#include <doctest.h>

#include <algorithm>

#include "speaq/errors.hpp"
#include "speaq/io.hpp"
#include "speaq/simulator.hpp"

using namespace speaq;
using sim::ScenarioConfig;
using sim::Scene;
using sim::SceneContext;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n_predicates = 12;
  cfg.n_entity_classes = 6;
  cfg.n_q = 24;
  cfg.n_g = 2;
  cfg.scenes = 16;
  cfg.gt_per_scene_min = 1;
  cfg.gt_per_scene_max = 3;
  cfg.candidates_per_gt_min = 2;
  cfg.candidates_per_gt_max = 3;
  return cfg;
}

}  // namespace

TEST_CASE("zipf proportions are a normalized decreasing power law") {
  const auto p = sim::zipf_proportions(50, 1.2);
  double sum = 0.0;
  for (std::size_t c = 0; c + 1 < p.size(); ++c) CHECK(p[c] >= p[c + 1]);
  for (double v : p) sum += v;
  CHECK(sum == doctest::Approx(1.0));

  // exponent 0 degenerates to uniform
  const auto u = sim::zipf_proportions(4, 0.0);
  CHECK(u[0] == doctest::Approx(0.25));
  CHECK(u[3] == doctest::Approx(0.25));
}

TEST_CASE("the default zipf split fills five groups over 50 predicates") {
  const auto p = sim::zipf_proportions(50, 1.2);
  std::vector<std::pair<int, double>> pairs;
  for (int c = 0; c < 50; ++c) pairs.emplace_back(c, p[c]);
  const PredicateGrouping pg = group_predicates(pairs, 5);
  for (const auto& group : pg.groups()) CHECK_FALSE(group.empty());
}

TEST_CASE("scenes are byte-identical for the same seed") {
  const ScenarioConfig cfg = small_config();
  const SceneContext ctx = sim::make_scene_context(cfg);
  Rng a = Rng::for_stream(cfg.seed, 3);
  Rng b = Rng::for_stream(cfg.seed, 3);
  const Scene first = sim::generate_scene(a, cfg, ctx);
  const Scene second = sim::generate_scene(b, cfg, ctx);
  CHECK(io::scene_to_json(first).dump() == io::scene_to_json(second).dump());
}

TEST_CASE("zero-noise candidates are exact copies of their GT") {
  ScenarioConfig cfg = small_config();
  cfg.box_jitter_sigma = 0.0;
  cfg.class_temperature = 1e-9;
  cfg.gt_per_scene_min = cfg.gt_per_scene_max = 2;
  cfg.candidates_per_gt_min = cfg.candidates_per_gt_max = 2;
  const SceneContext ctx = sim::make_scene_context(cfg);
  Rng rng = Rng::for_stream(5, 0);
  const Scene scene = sim::generate_scene(rng, cfg, ctx);

  int copies = 0;
  for (const Prediction& pred : scene.preds) {
    for (const GtTriplet& gt : scene.gts) {
      if (pred.subject_box == gt.subject_box && pred.object_box == gt.object_box &&
          pred.subject_probs[gt.subject_class] == 1.0 &&
          pred.predicate_probs[gt.predicate_class] == 1.0)
        ++copies;
    }
  }
  CHECK(copies >= 4);  // two candidates per GT, two GTs
}

TEST_CASE("a zero-GT range produces only background predictions") {
  ScenarioConfig cfg = small_config();
  cfg.gt_per_scene_min = cfg.gt_per_scene_max = 0;
  const SceneContext ctx = sim::make_scene_context(cfg);
  Rng rng = Rng::for_stream(6, 0);
  const Scene scene = sim::generate_scene(rng, cfg, ctx);
  CHECK(scene.gts.empty());
  CHECK(static_cast<int>(scene.preds.size()) == cfg.n_q);
  for (const Prediction& pred : scene.preds) {
    // elevated no-object mass marks a background prediction
    CHECK(pred.subject_probs.back() > pred.subject_probs.front());
  }
}

TEST_CASE("every scene emits exactly n_q predictions with slot indices") {
  const ScenarioConfig cfg = small_config();
  const SceneContext ctx = sim::make_scene_context(cfg);
  for (int s = 0; s < 8; ++s) {
    Rng rng = Rng::for_stream(cfg.seed, s);
    const Scene scene = sim::generate_scene(rng, cfg, ctx);
    REQUIRE(static_cast<int>(scene.preds.size()) == cfg.n_q);
    for (int j = 0; j < cfg.n_q; ++j) CHECK(scene.preds[j].query_index == j);
    for (const Prediction& pred : scene.preds) {
      CHECK(valid_probability_vector(pred.subject_probs));
      CHECK(valid_probability_vector(pred.object_probs));
      CHECK(valid_probability_vector(pred.predicate_probs));
      CHECK(pred.subject_box.valid());
      CHECK(pred.object_box.valid());
    }
  }
}

TEST_CASE("suppressed promising ratio counts unassigned promising predictions") {
  ScenarioConfig cfg = small_config();
  cfg.box_jitter_sigma = 0.0;
  cfg.class_temperature = 1e-9;
  cfg.gt_per_scene_min = cfg.gt_per_scene_max = 1;
  cfg.candidates_per_gt_min = cfg.candidates_per_gt_max = 4;
  const SceneContext ctx = sim::make_scene_context(cfg);
  Rng rng = Rng::for_stream(9, 1);
  const Scene scene = sim::generate_scene(rng, cfg, ctx);

  // four perfect candidates; single assignment absorbs exactly one
  const AssignmentResult single = single_assign(scene.gts, scene.preds, cfg.weights);
  CHECK(sim::suppressed_promising_ratio(scene.gts, scene.preds, single, 0.6) ==
        doctest::Approx(0.75));

  // an assignment covering every prediction suppresses nothing
  AssignmentResult all;
  all.strategy = Strategy::Iou;
  for (int j = 0; j < cfg.n_q; ++j) all.pairs.emplace_back(0, j);
  all.d = {cfg.n_q};
  CHECK(sim::suppressed_promising_ratio(scene.gts, scene.preds, all, 0.6) == 0.0);

  // no promising predictions at an unreachable threshold
  const AssignmentResult none = single_assign(scene.gts, scene.preds, cfg.weights);
  CHECK(sim::suppressed_promising_ratio({}, scene.preds, none, 0.6) == 0.0);
}

TEST_CASE("single assignment on zero-noise scenes suppresses all but one copy per GT") {
  ScenarioConfig cfg = small_config();
  cfg.box_jitter_sigma = 0.0;
  cfg.class_temperature = 1e-9;
  cfg.candidates_per_gt_min = cfg.candidates_per_gt_max = 4;
  cfg.scenes = 10;
  sim::ComparisonOptions options;
  options.strategies = {Strategy::Single};

  const auto report = sim::run_comparison(cfg, options, 1);
  // every GT spawns 4 perfect candidates and absorbs exactly one
  CHECK(report.strategies[0].suppressed_promising_ratio.at(0.6) == doctest::Approx(0.75));
}

TEST_CASE("run_comparison aggregates deterministically") {
  ScenarioConfig cfg = small_config();
  cfg.scenes = 12;
  sim::ComparisonOptions options;
  options.strategies = {Strategy::Single, Strategy::Speaq};

  const auto report_a = sim::run_comparison(cfg, options, 1);
  const auto report_b = sim::run_comparison(cfg, options, 1);
  const std::string bytes_a = io::canonical_dump(io::report_to_json(report_a));
  const std::string bytes_b = io::canonical_dump(io::report_to_json(report_b));
  CHECK(bytes_a == bytes_b);

  // thread count must not show up in the result
  const auto report_c = sim::run_comparison(cfg, options, 4);
  CHECK(bytes_a == io::canonical_dump(io::report_to_json(report_c)));
}

TEST_CASE("agnostic d is reported exactly when capacity is ample") {
  ScenarioConfig cfg = small_config();
  cfg.scenes = 8;
  sim::ComparisonOptions options;
  options.strategies = {Strategy::Agnostic};
  options.agnostic_d = 3;

  const auto report = sim::run_comparison(cfg, options, 1);
  CHECK(report.strategies[0].avg_d == 3.0);
}

TEST_CASE("speaq keeps the cross-tab diagonal and multi-assignment lifts coverage") {
  ScenarioConfig cfg = small_config();
  cfg.scenes = 24;
  sim::ComparisonOptions options;
  options.strategies = {Strategy::Single, Strategy::Agnostic, Strategy::Speaq};

  const auto report = sim::run_comparison(cfg, options, 2);
  const auto& single = report.strategies[0];
  const auto& agnostic = report.strategies[1];
  const auto& speaq_metrics = report.strategies[2];

  for (std::size_t i = 0; i < speaq_metrics.per_group_cross_tab.size(); ++i)
    for (std::size_t j = 0; j < speaq_metrics.per_group_cross_tab[i].size(); ++j)
      if (i != j) CHECK(speaq_metrics.per_group_cross_tab[i][j] == 0.0);

  CHECK(agnostic.avg_gts_per_query >= single.avg_gts_per_query);
  CHECK(speaq_metrics.avg_gts_per_query >= single.avg_gts_per_query);
}

TEST_CASE("invalid configs are rejected") {
  ScenarioConfig cfg = small_config();
  cfg.class_temperature = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.gt_per_scene_max = cfg.gt_per_scene_min - 1;
  CHECK_THROWS_AS(sim::make_scene_context(cfg), ConfigError);
  CHECK_THROWS_AS(sim::run_comparison(small_config(), sim::ComparisonOptions{{}, 3, 0.5}, 1),
                  ConfigError);
}
