#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speaq/grouping.hpp"
#include "speaq/simulator.hpp"

namespace speaq::io {

using json = nlohmann::json;

/// Simulation settings plus strategy selection; the `simulate` subcommand's
/// config file maps onto this one to one.
struct RunConfig {
  sim::ScenarioConfig scenario;
  sim::ComparisonOptions options;
};

// --- canonical JSON -------------------------------------------------------

/// Serializes with sorted keys and doubles fixed to 6 significant digits.
/// Re-serializing a parsed canonical document reproduces it byte for byte.
std::string canonical_dump(const json& value);

// --- frequency tables ------------------------------------------------------

/// CSV with header `predicate_id,count`. ParseError names the failing line.
FrequencyTable load_frequency_csv(const std::string& path);
void save_frequency_csv(const FrequencyTable& table, const std::string& path);

// --- groupings --------------------------------------------------------------

json predicate_grouping_to_json(const PredicateGrouping& pg);
PredicateGrouping predicate_grouping_from_json(const json& value);
void save_predicate_grouping(const PredicateGrouping& pg, const std::string& path);
PredicateGrouping load_predicate_grouping(const std::string& path);

json query_grouping_to_json(const QueryGrouping& qg);
QueryGrouping query_grouping_from_json(const json& value);
void save_query_grouping(const QueryGrouping& qg, const std::string& path);
QueryGrouping load_query_grouping(const std::string& path);

// --- scenes ------------------------------------------------------------------

json scene_to_json(const sim::Scene& scene);
sim::Scene scene_from_json(const json& value, int record_index);

/// JSON Lines, one scene per line.
void save_scenes_jsonl(const std::vector<sim::Scene>& scenes, const std::string& path);
std::vector<sim::Scene> load_scenes_jsonl(const std::string& path);

// --- run configuration --------------------------------------------------------

json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const json& value);
void save_run_config(const RunConfig& config, const std::string& path);
RunConfig load_run_config(const std::string& path);

// --- reports --------------------------------------------------------------------

json report_to_json(const sim::SimulationReport& report);

/// Writes report.json, metrics.csv and one cross-tab CSV per strategy;
/// adds group_frequencies.svg when with_svg is set.
void write_report_files(const sim::SimulationReport& report, const std::string& out_dir,
                        bool with_svg);

/// Assignment report for one scene: pairs with per-pair matching cost and
/// loss components, per-GT d values, and scene totals (unassigned queries
/// contribute their no-object classification loss).
json assignment_report_json(const sim::Scene& scene, const AssignmentResult& result,
                            const CostWeights& weights, int scene_index);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace speaq::io
