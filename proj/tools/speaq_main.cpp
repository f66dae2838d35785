#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "speaq/errors.hpp"
#include "speaq/io.hpp"
#include "speaq/simulator.hpp"
#include "speaq/strategies.hpp"
#include "speaq/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // verification or config failure
constexpr int kExitIo = 2;

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw speaq::IoError("cannot create directory " + out_dir);
}

int cmd_group(const std::string& freq_csv, int n_g, int n_q, const std::string& out_dir) {
  const speaq::FrequencyTable table = speaq::io::load_frequency_csv(freq_csv);
  const speaq::PredicateGrouping pg = speaq::group_predicates(table, n_g);
  const speaq::QueryGrouping qg = speaq::group_queries(pg, n_q);

  ensure_out_dir(out_dir);
  const std::filesystem::path dir(out_dir);
  speaq::io::save_predicate_grouping(pg, (dir / "predicate_groups.json").string());
  speaq::io::save_query_grouping(qg, (dir / "query_groups.json").string());

  std::printf("group | GT share | queries | predicates\n");
  for (int g = 0; g < pg.group_count(); ++g) {
    std::printf("%5d | %7.1f%% | %7d | %10zu\n", g, 100.0 * pg.group_freq()[g],
                qg.counts()[g], pg.groups()[g].size());
  }
  std::printf("wrote %s and %s\n", (dir / "predicate_groups.json").c_str(),
              (dir / "query_groups.json").c_str());
  return kExitOk;
}

struct AssignOptions {
  std::string scene_file;
  std::string predicate_groups;
  std::string query_groups;
  std::string strategy = "speaq";
  std::string out_dir;
  speaq::CostWeights weights;
  speaq::QualityConfig quality;
  std::string relation_fn = "max";
  int agnostic_d = 3;
  double iou_threshold = 0.5;
};

int cmd_assign(const AssignOptions& opt) {
  const speaq::Strategy strategy = speaq::strategy_from_string(opt.strategy);
  speaq::QualityConfig quality = opt.quality;
  quality.relation_fn = speaq::relation_fn_from_string(opt.relation_fn);

  std::optional<speaq::PredicateGrouping> pg;
  std::optional<speaq::QueryGrouping> qg;
  if (!opt.predicate_groups.empty() || !opt.query_groups.empty()) {
    if (opt.predicate_groups.empty() || opt.query_groups.empty())
      throw speaq::ConfigError("assign: grouping files must come together");
    pg = speaq::io::load_predicate_grouping(opt.predicate_groups);
    qg = speaq::io::load_query_grouping(opt.query_groups);
  }
  if (strategy == speaq::Strategy::Speaq && !pg.has_value())
    throw speaq::ConfigError("assign: the speaq strategy needs grouping files");

  const std::vector<speaq::sim::Scene> scenes = speaq::io::load_scenes_jsonl(opt.scene_file);
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t index = 0; index < scenes.size(); ++index) {
    const speaq::sim::Scene& scene = scenes[index];
    speaq::AssignmentResult result;
    switch (strategy) {
      case speaq::Strategy::Single:
        result = speaq::single_assign(scene.gts, scene.preds, opt.weights);
        break;
      case speaq::Strategy::Iou:
        result = speaq::iou_assign(scene.gts, scene.preds, opt.iou_threshold);
        break;
      case speaq::Strategy::Agnostic:
        result = speaq::agnostic_multi_assign(scene.gts, scene.preds, opt.weights,
                                              opt.agnostic_d, pg ? &*pg : nullptr,
                                              qg ? &*qg : nullptr);
        break;
      case speaq::Strategy::Speaq:
        result = speaq::speaq_assign(scene.gts, scene.preds, *pg, *qg, opt.weights, quality);
        break;
    }
    records.push_back(speaq::io::assignment_report_json(scene, result, opt.weights,
                                                        static_cast<int>(index)));
  }

  ensure_out_dir(opt.out_dir);
  const std::string path =
      (std::filesystem::path(opt.out_dir) / "assignments.json").string();
  speaq::io::write_text_file(path, speaq::io::canonical_dump(records));
  std::printf("wrote %s (%zu scenes)\n", path.c_str(), scenes.size());
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, int threads, bool svg, bool dump_scenes) {
  speaq::io::RunConfig config = speaq::io::load_run_config(config_path);
  if (seed.has_value()) config.scenario.seed = *seed;

  const speaq::sim::SimulationReport report =
      speaq::sim::run_comparison(config.scenario, config.options, threads);
  speaq::io::write_report_files(report, out_dir, svg);

  if (dump_scenes) {
    const speaq::sim::SceneContext ctx = speaq::sim::make_scene_context(config.scenario);
    std::vector<speaq::sim::Scene> scenes;
    scenes.reserve(config.scenario.scenes);
    for (int s = 0; s < config.scenario.scenes; ++s) {
      speaq::Rng rng = speaq::Rng::for_stream(config.scenario.seed, s);
      scenes.push_back(speaq::sim::generate_scene(rng, config.scenario, ctx));
    }
    speaq::io::save_scenes_jsonl(
        scenes, (std::filesystem::path(out_dir) / "scenes.jsonl").string());
  }

  std::printf("strategy  avg_d  suppressed@%.2g\n", config.scenario.promising_iou_threshold);
  for (const auto& metrics : report.strategies) {
    std::printf("%-9s %5.2f  %.4f\n", speaq::to_string(metrics.strategy).c_str(), metrics.avg_d,
                metrics.suppressed_promising_ratio.at(config.scenario.promising_iou_threshold));
  }
  std::printf("wrote %s/report.json\n", out_dir.c_str());
  return kExitOk;
}

int cmd_verify(int trials, int max_n, std::uint64_t seed) {
  const speaq::verify::SuiteResult oracle = speaq::verify::oracle_equivalence(trials, max_n, seed);
  const speaq::verify::SuiteResult groups = speaq::verify::group_constraint(trials, seed);

  int exit_code = kExitOk;
  for (const auto& suite : {oracle, groups}) {
    std::printf("%s: %s (%d trials, %d failures)\n", suite.name.c_str(),
                suite.passed() ? "pass" : "FAIL", suite.trials, suite.failures);
    if (!suite.passed()) {
      if (!suite.first_failure.empty()) std::printf("  first failure: %s\n",
                                                    suite.first_failure.c_str());
      exit_code = kExitFailure;
    }
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SpeaQ label assignment toolkit"};
  app.require_subcommand(1);

  // group
  std::string freq_csv, out_dir;
  int n_g = 4, n_q = 300;
  CLI::App* group = app.add_subcommand(
      "group", "Frequency-based predicate grouping and proportional query grouping");
  group->add_option("--freq", freq_csv, "CSV file with header predicate_id,count")->required();
  group->add_option("--n-g", n_g, "number of groups")->check(CLI::PositiveNumber);
  group->add_option("--n-q", n_q, "number of queries")->check(CLI::PositiveNumber);
  group->add_option("--out-dir", out_dir, "output directory")->required();

  // assign
  AssignOptions assign_opt;
  CLI::App* assign = app.add_subcommand("assign", "Assign GTs to predictions in scene files");
  assign->add_option("--scenes", assign_opt.scene_file, "JSONL scene file")->required();
  assign->add_option("--predicate-groups", assign_opt.predicate_groups,
                     "predicate_groups.json from `group`");
  assign->add_option("--query-groups", assign_opt.query_groups,
                     "query_groups.json from `group`");
  assign->add_option("--strategy", assign_opt.strategy, "single|iou|agnostic|speaq");
  assign->add_option("--out-dir", assign_opt.out_dir, "output directory")->required();
  assign->add_option("--w-cls", assign_opt.weights.w_cls, "classification cost weight");
  assign->add_option("--w-l1", assign_opt.weights.w_l1, "L1 cost weight");
  assign->add_option("--w-giou", assign_opt.weights.w_giou, "GIoU cost weight");
  assign->add_flag("--predicate-box", assign_opt.weights.include_predicate_box,
                   "include predicate box costs when boxes are present");
  assign->add_option("--k", assign_opt.quality.k, "top-k width for d_i");
  assign->add_option("--lambda-rel", assign_opt.quality.lambda_rel,
                     "predicate confidence coefficient");
  assign->add_option("--relation-fn", assign_opt.relation_fn, "min|mean|max");
  assign->add_option("--agnostic-d", assign_opt.agnostic_d, "d for the agnostic strategy");
  assign->add_option("--iou-threshold", assign_opt.iou_threshold,
                     "threshold for the iou strategy");

  // simulate
  std::string config_path;
  std::string sim_out_dir;
  std::uint64_t seed_override = 0;
  int threads = 1;
  bool svg = false;
  bool dump_scenes = false;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Compare assignment strategies on synthetic scenes");
  simulate->add_option("--config", config_path, "run configuration JSON")->required();
  simulate->add_option("--out-dir", sim_out_dir, "output directory")->required();
  CLI::Option* seed_opt = simulate->add_option("--seed", seed_override, "override config seed");
  simulate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  simulate->add_flag("--svg", svg, "also write group_frequencies.svg");
  simulate->add_flag("--dump-scenes", dump_scenes, "also write the generated scenes.jsonl");

  // verify
  int trials = 1000, max_n = 7;
  std::uint64_t verify_seed = 42;
  CLI::App* verify =
      app.add_subcommand("verify", "Solver-vs-oracle and group-constraint property suites");
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--max-n", max_n, "largest matrix side (<= 8)")
      ->check(CLI::Range(1, 8));
  verify->add_option("--seed", verify_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (group->parsed()) return cmd_group(freq_csv, n_g, n_q, out_dir);
    if (assign->parsed()) return cmd_assign(assign_opt);
    if (simulate->parsed()) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = seed_override;
      return cmd_simulate(config_path, sim_out_dir, seed, threads, svg, dump_scenes);
    }
    if (verify->parsed()) return cmd_verify(trials, max_n, verify_seed);
  } catch (const speaq::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const speaq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
