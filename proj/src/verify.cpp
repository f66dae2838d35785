#include "speaq/verify.hpp"

#include <cmath>
#include <string>

#include "speaq/errors.hpp"
#include "speaq/simulator.hpp"
#include "speaq/strategies.hpp"

namespace speaq::verify {

CostMatrix random_grid_matrix(Rng& rng, int n, bool with_forbidden) {
  CostMatrix costs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool forbid = with_forbidden && rng.uniform() < 0.15;
      costs.set(i, j, forbid ? kForbidden : rng.uniform_int(-64, 64) / 8.0);
    }
    // Keep at least one selectable entry per row, as padded cost matrices
    // always have.
    bool any_finite = false;
    for (int j = 0; j < n; ++j) any_finite = any_finite || !costs.forbidden(i, j);
    if (!any_finite) costs.set(i, rng.uniform_int(0, n - 1), rng.uniform_int(-64, 64) / 8.0);
  }
  // Null-GT rows cost zero against every prediction.
  if (rng.uniform() < 0.3) {
    const int zero_rows = rng.uniform_int(1, n);
    for (int i = n - zero_rows; i < n; ++i)
      for (int j = 0; j < n; ++j) costs.set(i, j, 0.0);
  }
  return costs;
}

SuiteResult oracle_equivalence(int trials, int max_n, std::uint64_t seed, const Solver& solver) {
  const Solver solve = solver ? solver : [](const CostMatrix& m) { return hungarian(m); };
  SuiteResult result;
  result.name = "hungarian vs brute force";

  Rng rng = Rng::for_stream(seed, 0x0acc1e);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = rng.uniform_int(1, max_n);
    const CostMatrix costs = random_grid_matrix(rng, n, true);

    bool solver_feasible = true;
    bool oracle_feasible = true;
    Assignment got, expected;
    try {
      got = solve(costs);
    } catch (const InfeasibleError&) {
      solver_feasible = false;
    }
    try {
      expected = brute_force_assignment(costs);
    } catch (const InfeasibleError&) {
      oracle_feasible = false;
    }

    ++result.trials;
    const bool ok = solver_feasible == oracle_feasible &&
                    (!solver_feasible || got.total_cost == expected.total_cost);
    if (!ok) {
      ++result.failures;
      if (result.first_failure.empty())
        result.first_failure = "trial " + std::to_string(trial) + " (n = " + std::to_string(n) +
                               "): solver " +
                               (solver_feasible ? std::to_string(got.total_cost) : "infeasible") +
                               " vs oracle " +
                               (oracle_feasible ? std::to_string(expected.total_cost)
                                                : "infeasible");
    }
  }
  return result;
}

SuiteResult group_constraint(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "speaq_assign group constraint";

  Rng rng = Rng::for_stream(seed, 0x96011b);
  int attempts = 0;
  while (result.trials < trials && attempts < trials * 4) {
    ++attempts;

    sim::ScenarioConfig cfg;
    cfg.n_predicates = rng.uniform_int(10, 40);
    cfg.n_entity_classes = rng.uniform_int(4, 20);
    cfg.n_q = rng.uniform_int(24, 48);
    cfg.n_g = rng.uniform_int(1, 6);
    cfg.zipf_exponent = rng.uniform(0.8, 1.6);
    cfg.gt_per_scene_min = 0;
    cfg.gt_per_scene_max = 5;
    cfg.candidates_per_gt_min = 1;
    cfg.candidates_per_gt_max = 4;
    cfg.seed = rng.next_u64();

    sim::SceneContext ctx = [&]() {
      for (;;) {
        try {
          return sim::make_scene_context(cfg);
        } catch (const EmptyGroupError&) {
          --cfg.n_g;  // distribution too flat for that many groups
        }
      }
    }();

    Rng scene_rng = Rng::for_stream(cfg.seed, 0);
    const sim::Scene scene = sim::generate_scene(scene_rng, cfg, ctx);
    AssignmentResult assignment;
    try {
      assignment = speaq_assign(scene.gts, scene.preds, ctx.pg, ctx.qg, cfg.weights, cfg.quality);
    } catch (const CapacityError&) {
      continue;  // more GTs than a tiny group's queries; redraw
    }

    ++result.trials;
    for (const auto& [gt, query] : assignment.pairs) {
      if (ctx.pg.group_of(scene.gts[gt].predicate_class) != ctx.qg.group_of(query)) {
        ++result.failures;
        if (result.first_failure.empty())
          result.first_failure = "attempt " + std::to_string(attempts) + ": GT " +
                                 std::to_string(gt) + " paired outside its group";
      }
    }
  }
  return result;
}

}  // namespace speaq::verify
