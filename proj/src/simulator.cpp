#include "speaq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "speaq/errors.hpp"

namespace speaq::sim {

void ScenarioConfig::validate() const {
  if (n_predicates < 1) throw ConfigError("scenario: n_predicates must be positive");
  if (n_entity_classes < 1) throw ConfigError("scenario: n_entity_classes must be positive");
  if (n_q < 1) throw ConfigError("scenario: n_q must be positive");
  if (n_g < 1) throw ConfigError("scenario: n_g must be positive");
  if (zipf_exponent < 0.0) throw ConfigError("scenario: zipf_exponent must be >= 0");
  if (scenes < 1) throw ConfigError("scenario: scenes must be positive");
  if (gt_per_scene_min < 0 || gt_per_scene_max < gt_per_scene_min)
    throw ConfigError("scenario: gt_per_scene range is empty");
  if (candidates_per_gt_min < 0 || candidates_per_gt_max < candidates_per_gt_min)
    throw ConfigError("scenario: candidates_per_gt range is empty");
  if (box_jitter_sigma < 0.0) throw ConfigError("scenario: box_jitter_sigma must be >= 0");
  if (class_temperature <= 0.0) throw ConfigError("scenario: class_temperature must be > 0");
  if (promising_iou_threshold <= 0.0 || promising_iou_threshold > 1.0)
    throw ConfigError("scenario: promising_iou_threshold must be in (0, 1]");
  if (quality.k < 1) throw ConfigError("scenario: quality.k must be >= 1");
}

std::vector<double> zipf_proportions(int n, double exponent) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int c = 0; c < n; ++c) {
    p[c] = std::pow(static_cast<double>(c + 1), -exponent);
    total += p[c];
  }
  for (double& value : p) value /= total;
  return p;
}

SceneContext make_scene_context(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::vector<double> proportions = zipf_proportions(cfg.n_predicates, cfg.zipf_exponent);

  std::vector<std::pair<int, double>> id_proportions;
  id_proportions.reserve(proportions.size());
  for (int c = 0; c < cfg.n_predicates; ++c) id_proportions.emplace_back(c, proportions[c]);
  PredicateGrouping pg = group_predicates(id_proportions, cfg.n_g);
  QueryGrouping qg = group_queries(pg, cfg.n_q);

  std::vector<double> cdf(proportions.size());
  double running = 0.0;
  for (std::size_t c = 0; c < proportions.size(); ++c) {
    running += proportions[c];
    cdf[c] = running;
  }
  cdf.back() = 1.0;
  return SceneContext{std::move(cdf), std::move(pg), std::move(qg)};
}

namespace {

int sample_cdf(Rng& rng, const std::vector<double>& cdf) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                   static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

BoundingBox random_box(Rng& rng) {
  const double x1 = rng.uniform();
  const double x2 = rng.uniform();
  const double y1 = rng.uniform();
  const double y2 = rng.uniform();
  return BoundingBox{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

BoundingBox jitter_box(Rng& rng, const BoundingBox& box, double sigma) {
  const double x1 = std::clamp(box.x_min + rng.gaussian(0.0, sigma), 0.0, 1.0);
  const double y1 = std::clamp(box.y_min + rng.gaussian(0.0, sigma), 0.0, 1.0);
  const double x2 = std::clamp(box.x_max + rng.gaussian(0.0, sigma), 0.0, 1.0);
  const double y2 = std::clamp(box.y_max + rng.gaussian(0.0, sigma), 0.0, 1.0);
  return BoundingBox{std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

// Softened one-hot: softmax of a one-hot logit vector at the given
// temperature. All non-target classes share one probability.
std::vector<double> soft_one_hot(int target, int size, double temperature) {
  const double off = std::exp(-1.0 / temperature);
  const double denom = 1.0 + (size - 1) * off;
  std::vector<double> probs(static_cast<std::size_t>(size), off / denom);
  probs[target] = 1.0 / denom;
  return probs;
}

// Near-uniform with the no-object class (last index) boosted.
std::vector<double> background_probs(int size) {
  constexpr double kNoObjectWeight = 4.0;
  const double denom = (size - 1) + kNoObjectWeight;
  std::vector<double> probs(static_cast<std::size_t>(size), 1.0 / denom);
  probs.back() = kNoObjectWeight / denom;
  return probs;
}

int take_slot(Rng& rng, std::vector<int>& pool) {
  const int pick = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
  const int slot = pool[pick];
  pool.erase(pool.begin() + pick);
  return slot;
}

}  // namespace

Scene generate_scene(Rng& rng, const ScenarioConfig& cfg, const SceneContext& ctx) {
  Scene scene;
  const int entity_space = cfg.n_entity_classes + 1;  // + no-object
  const int predicate_space = cfg.n_predicates + 1;

  const int n_gt = rng.uniform_int(cfg.gt_per_scene_min, cfg.gt_per_scene_max);
  scene.gts.reserve(n_gt);
  for (int g = 0; g < n_gt; ++g) {
    GtTriplet gt;
    gt.predicate_class = sample_cdf(rng, ctx.predicate_cdf);
    gt.subject_class = rng.uniform_int(0, cfg.n_entity_classes - 1);
    gt.object_class = rng.uniform_int(0, cfg.n_entity_classes - 1);
    gt.subject_box = random_box(rng);
    gt.object_box = random_box(rng);
    scene.gts.push_back(gt);
  }

  // Free query slots, tracked per group so candidates land in their GT's
  // group whenever it still has room.
  std::vector<std::vector<int>> free_by_group(ctx.qg.group_count());
  for (int group = 0; group < ctx.qg.group_count(); ++group) {
    const auto [begin, end] = ctx.qg.range(group);
    for (int slot = begin; slot < end; ++slot) free_by_group[group].push_back(slot);
  }
  int free_total = cfg.n_q;

  scene.preds.assign(static_cast<std::size_t>(cfg.n_q), Prediction{});
  std::vector<char> filled(static_cast<std::size_t>(cfg.n_q), 0);

  for (const GtTriplet& gt : scene.gts) {
    const int group = ctx.pg.group_of(gt.predicate_class);
    const int candidates = rng.uniform_int(cfg.candidates_per_gt_min, cfg.candidates_per_gt_max);
    for (int c = 0; c < candidates && free_total > 0; ++c) {
      int slot;
      if (!free_by_group[group].empty()) {
        slot = take_slot(rng, free_by_group[group]);
      } else {
        // Group exhausted; spill into any remaining slot.
        int spill = rng.uniform_int(0, free_total - 1);
        slot = -1;
        for (auto& pool : free_by_group) {
          if (spill < static_cast<int>(pool.size())) {
            slot = pool[spill];
            pool.erase(pool.begin() + spill);
            break;
          }
          spill -= static_cast<int>(pool.size());
        }
      }
      --free_total;

      Prediction pred;
      pred.query_index = slot;
      pred.subject_box = jitter_box(rng, gt.subject_box, cfg.box_jitter_sigma);
      pred.object_box = jitter_box(rng, gt.object_box, cfg.box_jitter_sigma);
      pred.subject_probs = soft_one_hot(gt.subject_class, entity_space, cfg.class_temperature);
      pred.object_probs = soft_one_hot(gt.object_class, entity_space, cfg.class_temperature);
      pred.predicate_probs =
          soft_one_hot(gt.predicate_class, predicate_space, cfg.class_temperature);
      scene.preds[slot] = std::move(pred);
      filled[slot] = 1;
    }
  }

  for (int slot = 0; slot < cfg.n_q; ++slot) {
    if (filled[slot]) continue;
    Prediction pred;
    pred.query_index = slot;
    pred.subject_box = random_box(rng);
    pred.object_box = random_box(rng);
    pred.subject_probs = background_probs(entity_space);
    pred.object_probs = background_probs(entity_space);
    pred.predicate_probs = background_probs(predicate_space);
    scene.preds[slot] = std::move(pred);
  }
  return scene;
}

Scene generate_scene(Rng& rng, const ScenarioConfig& cfg) {
  const SceneContext ctx = make_scene_context(cfg);
  return generate_scene(rng, cfg, ctx);
}

namespace {

int argmax(const std::vector<double>& values) {
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

bool is_promising(const Prediction& pred, const std::vector<GtTriplet>& gts, double iou_t) {
  const int s_hat = argmax(pred.subject_probs);
  const int o_hat = argmax(pred.object_probs);
  const int p_hat = argmax(pred.predicate_probs);
  for (const GtTriplet& gt : gts) {
    if (gt.is_null) continue;
    if (s_hat != gt.subject_class || o_hat != gt.object_class || p_hat != gt.predicate_class)
      continue;
    if (iou(gt.subject_box, pred.subject_box) > iou_t &&
        iou(gt.object_box, pred.object_box) > iou_t)
      return true;
  }
  return false;
}

double suppressed_promising_ratio(const std::vector<GtTriplet>& gts,
                                  const std::vector<Prediction>& preds,
                                  const AssignmentResult& result, double iou_t) {
  std::set<int> assigned;
  for (const auto& [gt, query] : result.pairs) assigned.insert(query);

  int promising = 0;
  int suppressed = 0;
  for (const Prediction& pred : preds) {
    if (!is_promising(pred, gts, iou_t)) continue;
    ++promising;
    if (assigned.count(pred.query_index) == 0) ++suppressed;
  }
  if (promising == 0) return 0.0;
  return static_cast<double>(suppressed) / promising;
}

namespace {

struct SceneMetrics {
  std::map<double, double> suppressed;
  double d_sum{0.0};
  int gt_count{0};
  double gts_per_query{0.0};
  std::vector<std::vector<double>> cross_tab;
  std::vector<double> assigned_freq;
};

AssignmentResult run_strategy(Strategy strategy, const Scene& scene, const ScenarioConfig& cfg,
                              const ComparisonOptions& options, const SceneContext& ctx) {
  switch (strategy) {
    case Strategy::Single:
      return single_assign(scene.gts, scene.preds, cfg.weights);
    case Strategy::Iou:
      return iou_assign(scene.gts, scene.preds, options.iou_assign_threshold);
    case Strategy::Agnostic:
      return agnostic_multi_assign(scene.gts, scene.preds, cfg.weights, options.agnostic_d);
    case Strategy::Speaq:
      return speaq_assign(scene.gts, scene.preds, ctx.pg, ctx.qg, cfg.weights, cfg.quality);
  }
  throw ConfigError("run_comparison: unknown strategy");
}

std::vector<double> promising_thresholds(const ScenarioConfig& cfg) {
  std::set<double> thresholds{0.6, 0.7, 0.8};
  thresholds.insert(cfg.promising_iou_threshold);
  return {thresholds.begin(), thresholds.end()};
}

SceneMetrics measure(const Scene& scene, const AssignmentResult& result,
                     const ScenarioConfig& cfg, const SceneContext& ctx,
                     const std::vector<double>& thresholds) {
  SceneMetrics m;
  for (double t : thresholds)
    m.suppressed[t] = suppressed_promising_ratio(scene.gts, scene.preds, result, t);

  m.gt_count = static_cast<int>(scene.gts.size());
  for (int d : result.d) m.d_sum += d;
  m.gts_per_query = static_cast<double>(result.pairs.size()) / cfg.n_q;

  const int n_g = ctx.pg.group_count();
  m.cross_tab.assign(n_g, std::vector<double>(n_g, 0.0));
  m.assigned_freq.assign(n_g, 0.0);
  for (const auto& [gt, query] : result.pairs) {
    const int gt_group = ctx.pg.group_of(scene.gts[gt].predicate_class);
    m.cross_tab[gt_group][ctx.qg.group_of(query)] += 1.0;
    m.assigned_freq[gt_group] += 1.0;
  }
  for (int i = 0; i < n_g; ++i) {
    for (int j = 0; j < n_g; ++j) {
      const int queries = ctx.qg.counts()[j];
      m.cross_tab[i][j] = queries > 0 ? m.cross_tab[i][j] / queries : 0.0;
    }
  }
  if (!result.pairs.empty()) {
    for (double& f : m.assigned_freq) f /= static_cast<double>(result.pairs.size());
  }
  return m;
}

}  // namespace

SimulationReport run_comparison(const ScenarioConfig& cfg, const ComparisonOptions& options,
                                int threads) {
  if (options.strategies.empty()) throw ConfigError("run_comparison: no strategies");
  if (options.agnostic_d < 1) throw ConfigError("run_comparison: agnostic_d must be >= 1");
  const SceneContext ctx = make_scene_context(cfg);
  const std::vector<double> thresholds = promising_thresholds(cfg);

  // One metrics slot per (scene, strategy); workers fill disjoint slots and
  // the reduction below runs in scene-index order.
  const std::size_t n_strategies = options.strategies.size();
  std::vector<std::vector<SceneMetrics>> slots(static_cast<std::size_t>(cfg.scenes));

  const auto worker = [&](int begin, int end) {
    for (int s = begin; s < end; ++s) {
      Rng rng = Rng::for_stream(cfg.seed, static_cast<std::uint64_t>(s));
      const Scene scene = generate_scene(rng, cfg, ctx);
      std::vector<SceneMetrics> per_strategy;
      per_strategy.reserve(n_strategies);
      for (Strategy strategy : options.strategies) {
        const AssignmentResult result = run_strategy(strategy, scene, cfg, options, ctx);
        per_strategy.push_back(measure(scene, result, cfg, ctx, thresholds));
      }
      slots[s] = std::move(per_strategy);
    }
  };

  const int n_threads = std::max(1, std::min(threads, cfg.scenes));
  if (n_threads == 1) {
    worker(0, cfg.scenes);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.scenes + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(cfg.scenes, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  SimulationReport report;
  report.config = cfg;
  report.options = options;
  report.gt_group_freq = ctx.pg.group_freq();
  report.query_group_counts = ctx.qg.counts();

  const int n_g = ctx.pg.group_count();
  for (std::size_t k = 0; k < n_strategies; ++k) {
    StrategyMetrics agg;
    agg.strategy = options.strategies[k];
    for (double t : thresholds) agg.suppressed_promising_ratio[t] = 0.0;
    agg.per_group_cross_tab.assign(n_g, std::vector<double>(n_g, 0.0));
    agg.assigned_gt_freq_per_group.assign(n_g, 0.0);

    double d_total = 0.0;
    long long gt_total = 0;
    for (int s = 0; s < cfg.scenes; ++s) {
      const SceneMetrics& m = slots[s][k];
      for (double t : thresholds) agg.suppressed_promising_ratio[t] += m.suppressed.at(t);
      d_total += m.d_sum;
      gt_total += m.gt_count;
      agg.avg_gts_per_query += m.gts_per_query;
      for (int i = 0; i < n_g; ++i) {
        for (int j = 0; j < n_g; ++j) agg.per_group_cross_tab[i][j] += m.cross_tab[i][j];
        agg.assigned_gt_freq_per_group[i] += m.assigned_freq[i];
      }
    }
    for (double t : thresholds) agg.suppressed_promising_ratio[t] /= cfg.scenes;
    agg.avg_d = gt_total > 0 ? d_total / static_cast<double>(gt_total) : 0.0;
    agg.avg_gts_per_query /= cfg.scenes;
    for (int i = 0; i < n_g; ++i) {
      for (int j = 0; j < n_g; ++j) agg.per_group_cross_tab[i][j] /= cfg.scenes;
      agg.assigned_gt_freq_per_group[i] /= cfg.scenes;
    }
    report.strategies.push_back(std::move(agg));
  }
  return report;
}

}  // namespace speaq::sim
