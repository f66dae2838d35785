#include "speaq/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "speaq/errors.hpp"

namespace speaq::io {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

void canonical_write(const json& value, std::string& out, int indent) {
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += ": ";
        canonical_write(it.value(), out, indent + 2);
      }
      out += "\n";
      out.append(static_cast<std::size_t>(indent), ' ');
      out += "}";
      return;
    }
    case json::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& element : value) {
        if (!first) out += ", ";
        first = false;
        canonical_write(element, out, indent);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!object.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (allowed.count(it.key()) == 0)
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

const json& require(const json& object, const std::string& key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

BoundingBox box_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 4 ||
      !std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); }))
    throw ParseError(where + ": box must be an array of 4 numbers");
  const BoundingBox box{value[0].get<double>(), value[1].get<double>(), value[2].get<double>(),
                        value[3].get<double>()};
  if (!box.valid())
    throw ParseError(where + ": box violates corner order or the [0, 1] range");
  return box;
}

json box_to_json(const BoundingBox& box) {
  return json::array({box.x_min, box.y_min, box.x_max, box.y_max});
}

std::vector<double> probs_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty() ||
      !std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); }))
    throw ParseError(where + ": probabilities must be a nonempty numeric array");
  std::vector<double> probs;
  probs.reserve(value.size());
  for (const auto& v : value) probs.push_back(v.get<double>());
  if (!valid_probability_vector(probs))
    throw ParseError(where + ": probabilities must be nonnegative and sum to 1");
  return probs;
}

json parse_json(const std::string& text, const std::string& where) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) throw ParseError(where + ": invalid JSON");
  return value;
}

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  canonical_write(value, out, 0);
  out += "\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("failed while writing " + path);
}

FrequencyTable load_frequency_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  int line_number = 0;
  std::vector<std::pair<int, std::int64_t>> counts;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + " line " + std::to_string(line_number);
    if (line_number == 1) {
      if (line != "predicate_id,count")
        throw ParseError(where + ": expected header 'predicate_id,count'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(where + ": expected 'id,count'");
    try {
      std::size_t used = 0;
      const int id = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw ParseError(where + ": malformed predicate id");
      const std::string count_text = line.substr(comma + 1);
      const std::int64_t count = std::stoll(count_text, &used);
      if (used != count_text.size()) throw ParseError(where + ": malformed count");
      if (count < 0) throw ParseError(where + ": negative count");
      counts.emplace_back(id, count);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(where + ": malformed row '" + line + "'");
    }
  }
  if (counts.empty()) throw ParseError(path + ": no data rows");
  try {
    return FrequencyTable::from_counts(std::move(counts));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_frequency_csv(const FrequencyTable& table, const std::string& path) {
  std::string out = "predicate_id,count\n";
  for (const auto& [id, count] : table.counts())
    out += std::to_string(id) + "," + std::to_string(count) + "\n";
  write_text_file(path, out);
}

json predicate_grouping_to_json(const PredicateGrouping& pg) {
  return json{{"groups", pg.groups()}, {"group_freq", pg.group_freq()}};
}

PredicateGrouping predicate_grouping_from_json(const json& value) {
  check_keys(value, {"groups", "group_freq"}, "predicate grouping");
  const auto groups = require(value, "groups", "predicate grouping")
                          .get<std::vector<std::vector<int>>>();
  const auto freq = require(value, "group_freq", "predicate grouping").get<std::vector<double>>();
  return PredicateGrouping(groups, freq);
}

void save_predicate_grouping(const PredicateGrouping& pg, const std::string& path) {
  write_text_file(path, predicate_grouping_to_json(pg).dump(2) + "\n");
}

PredicateGrouping load_predicate_grouping(const std::string& path) {
  return predicate_grouping_from_json(parse_json(read_text_file(path), path));
}

json query_grouping_to_json(const QueryGrouping& qg) {
  json offsets = json::array();
  for (int g = 0; g < qg.group_count(); ++g) {
    const auto [begin, end] = qg.range(g);
    offsets.push_back(json::array({begin, end}));
  }
  return json{{"n_queries", qg.total_queries()}, {"counts", qg.counts()}, {"offsets", offsets}};
}

QueryGrouping query_grouping_from_json(const json& value) {
  check_keys(value, {"n_queries", "counts", "offsets"}, "query grouping");
  QueryGrouping qg(require(value, "counts", "query grouping").get<std::vector<int>>());
  if (value.contains("n_queries") && value["n_queries"].get<int>() != qg.total_queries())
    throw ParseError("query grouping: n_queries disagrees with the counts");
  return qg;
}

void save_query_grouping(const QueryGrouping& qg, const std::string& path) {
  write_text_file(path, query_grouping_to_json(qg).dump(2) + "\n");
}

QueryGrouping load_query_grouping(const std::string& path) {
  return query_grouping_from_json(parse_json(read_text_file(path), path));
}

json scene_to_json(const sim::Scene& scene) {
  json gts = json::array();
  for (const GtTriplet& gt : scene.gts) {
    json record{{"s_box", box_to_json(gt.subject_box)},
                {"o_box", box_to_json(gt.object_box)},
                {"s_cls", gt.subject_class},
                {"o_cls", gt.object_class},
                {"p_cls", gt.predicate_class}};
    if (gt.predicate_box.has_value()) record["p_box"] = box_to_json(*gt.predicate_box);
    gts.push_back(std::move(record));
  }
  json preds = json::array();
  for (const Prediction& pred : scene.preds) {
    json record{{"s_box", box_to_json(pred.subject_box)},
                {"o_box", box_to_json(pred.object_box)},
                {"s_probs", pred.subject_probs},
                {"o_probs", pred.object_probs},
                {"p_probs", pred.predicate_probs}};
    if (pred.predicate_box.has_value()) record["p_box"] = box_to_json(*pred.predicate_box);
    preds.push_back(std::move(record));
  }
  return json{{"gts", gts}, {"preds", preds}};
}

sim::Scene scene_from_json(const json& value, int record_index) {
  const std::string where = "scene record " + std::to_string(record_index);
  check_keys(value, {"gts", "preds"}, where);

  sim::Scene scene;
  const json& gts = require(value, "gts", where);
  if (!gts.is_array()) throw ParseError(where + ": 'gts' must be an array");
  for (const json& record : gts) {
    check_keys(record, {"s_box", "o_box", "p_box", "s_cls", "o_cls", "p_cls"}, where);
    GtTriplet gt;
    gt.subject_box = box_from_json(require(record, "s_box", where), where);
    gt.object_box = box_from_json(require(record, "o_box", where), where);
    if (record.contains("p_box")) gt.predicate_box = box_from_json(record["p_box"], where);
    gt.subject_class = require(record, "s_cls", where).get<int>();
    gt.object_class = require(record, "o_cls", where).get<int>();
    gt.predicate_class = require(record, "p_cls", where).get<int>();
    if (gt.subject_class < 0 || gt.object_class < 0 || gt.predicate_class < 0)
      throw ParseError(where + ": class ids must be nonnegative");
    scene.gts.push_back(std::move(gt));
  }

  const json& preds = require(value, "preds", where);
  if (!preds.is_array()) throw ParseError(where + ": 'preds' must be an array");
  int query_index = 0;
  for (const json& record : preds) {
    check_keys(record, {"s_box", "o_box", "p_box", "s_probs", "o_probs", "p_probs"}, where);
    Prediction pred;
    pred.subject_box = box_from_json(require(record, "s_box", where), where);
    pred.object_box = box_from_json(require(record, "o_box", where), where);
    if (record.contains("p_box")) pred.predicate_box = box_from_json(record["p_box"], where);
    pred.subject_probs = probs_from_json(require(record, "s_probs", where), where);
    pred.object_probs = probs_from_json(require(record, "o_probs", where), where);
    pred.predicate_probs = probs_from_json(require(record, "p_probs", where), where);
    pred.query_index = query_index++;
    scene.preds.push_back(std::move(pred));
  }
  return scene;
}

void save_scenes_jsonl(const std::vector<sim::Scene>& scenes, const std::string& path) {
  std::string out;
  for (const sim::Scene& scene : scenes) out += scene_to_json(scene).dump() + "\n";
  write_text_file(path, out);
}

std::vector<sim::Scene> load_scenes_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<sim::Scene> scenes;
  std::string line;
  int record = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    scenes.push_back(scene_from_json(
        parse_json(line, "scene record " + std::to_string(record)), record));
    ++record;
  }
  return scenes;
}

namespace {

json weights_to_json(const CostWeights& w) {
  return json{{"w_cls", w.w_cls},
              {"w_l1", w.w_l1},
              {"w_giou", w.w_giou},
              {"include_predicate_box", w.include_predicate_box}};
}

CostWeights weights_from_json(const json& value) {
  check_keys(value, {"w_cls", "w_l1", "w_giou", "include_predicate_box"}, "weights");
  CostWeights w;
  if (value.contains("w_cls")) w.w_cls = value["w_cls"].get<double>();
  if (value.contains("w_l1")) w.w_l1 = value["w_l1"].get<double>();
  if (value.contains("w_giou")) w.w_giou = value["w_giou"].get<double>();
  if (value.contains("include_predicate_box"))
    w.include_predicate_box = value["include_predicate_box"].get<bool>();
  if (w.w_cls < 0 || w.w_l1 < 0 || w.w_giou < 0)
    throw ConfigError("weights: cost weights must be >= 0");
  return w;
}

json quality_to_json(const QualityConfig& q) {
  return json{{"k", q.k},
              {"lambda_rel", q.lambda_rel},
              {"relation_fn", to_string(q.relation_fn)}};
}

QualityConfig quality_from_json(const json& value) {
  check_keys(value, {"k", "lambda_rel", "relation_fn"}, "quality");
  QualityConfig q;
  if (value.contains("k")) q.k = value["k"].get<int>();
  if (value.contains("lambda_rel")) q.lambda_rel = value["lambda_rel"].get<double>();
  if (value.contains("relation_fn"))
    q.relation_fn = relation_fn_from_string(value["relation_fn"].get<std::string>());
  if (q.k < 1) throw ConfigError("quality: k must be >= 1");
  return q;
}

json scenario_to_json(const sim::ScenarioConfig& cfg) {
  return json{{"n_predicates", cfg.n_predicates},
              {"n_entity_classes", cfg.n_entity_classes},
              {"n_q", cfg.n_q},
              {"n_g", cfg.n_g},
              {"zipf_exponent", cfg.zipf_exponent},
              {"scenes", cfg.scenes},
              {"gt_per_scene", json::array({cfg.gt_per_scene_min, cfg.gt_per_scene_max})},
              {"candidates_per_gt",
               json::array({cfg.candidates_per_gt_min, cfg.candidates_per_gt_max})},
              {"box_jitter_sigma", cfg.box_jitter_sigma},
              {"class_temperature", cfg.class_temperature},
              {"promising_iou_threshold", cfg.promising_iou_threshold},
              {"seed", cfg.seed},
              {"quality", quality_to_json(cfg.quality)},
              {"weights", weights_to_json(cfg.weights)}};
}

std::pair<int, int> range_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw ParseError(where + ": expected [min, max]");
  return {value[0].get<int>(), value[1].get<int>()};
}

sim::ScenarioConfig scenario_from_json(const json& value) {
  check_keys(value,
             {"n_predicates", "n_entity_classes", "n_q", "n_g", "zipf_exponent", "scenes",
              "gt_per_scene", "candidates_per_gt", "box_jitter_sigma", "class_temperature",
              "promising_iou_threshold", "seed", "quality", "weights"},
             "scenario");
  sim::ScenarioConfig cfg;
  if (value.contains("n_predicates")) cfg.n_predicates = value["n_predicates"].get<int>();
  if (value.contains("n_entity_classes"))
    cfg.n_entity_classes = value["n_entity_classes"].get<int>();
  if (value.contains("n_q")) cfg.n_q = value["n_q"].get<int>();
  if (value.contains("n_g")) cfg.n_g = value["n_g"].get<int>();
  if (value.contains("zipf_exponent")) cfg.zipf_exponent = value["zipf_exponent"].get<double>();
  if (value.contains("scenes")) cfg.scenes = value["scenes"].get<int>();
  if (value.contains("gt_per_scene"))
    std::tie(cfg.gt_per_scene_min, cfg.gt_per_scene_max) =
        range_from_json(value["gt_per_scene"], "scenario.gt_per_scene");
  if (value.contains("candidates_per_gt"))
    std::tie(cfg.candidates_per_gt_min, cfg.candidates_per_gt_max) =
        range_from_json(value["candidates_per_gt"], "scenario.candidates_per_gt");
  if (value.contains("box_jitter_sigma"))
    cfg.box_jitter_sigma = value["box_jitter_sigma"].get<double>();
  if (value.contains("class_temperature"))
    cfg.class_temperature = value["class_temperature"].get<double>();
  if (value.contains("promising_iou_threshold"))
    cfg.promising_iou_threshold = value["promising_iou_threshold"].get<double>();
  if (value.contains("seed")) cfg.seed = value["seed"].get<std::uint64_t>();
  if (value.contains("quality")) cfg.quality = quality_from_json(value["quality"]);
  if (value.contains("weights")) cfg.weights = weights_from_json(value["weights"]);
  cfg.validate();
  return cfg;
}

}  // namespace

json run_config_to_json(const RunConfig& config) {
  json strategies = json::array();
  for (Strategy s : config.options.strategies) strategies.push_back(to_string(s));
  return json{{"scenario", scenario_to_json(config.scenario)},
              {"strategies", strategies},
              {"agnostic_d", config.options.agnostic_d},
              {"iou_assign_threshold", config.options.iou_assign_threshold}};
}

RunConfig run_config_from_json(const json& value) {
  check_keys(value, {"scenario", "strategies", "agnostic_d", "iou_assign_threshold"}, "config");
  RunConfig config;
  if (value.contains("scenario")) config.scenario = scenario_from_json(value["scenario"]);
  if (value.contains("strategies")) {
    config.options.strategies.clear();
    for (const json& name : value["strategies"])
      config.options.strategies.push_back(strategy_from_string(name.get<std::string>()));
    if (config.options.strategies.empty())
      throw ConfigError("config: strategies must be nonempty");
  }
  if (value.contains("agnostic_d")) config.options.agnostic_d = value["agnostic_d"].get<int>();
  if (value.contains("iou_assign_threshold"))
    config.options.iou_assign_threshold = value["iou_assign_threshold"].get<double>();
  if (config.options.agnostic_d < 1) throw ConfigError("config: agnostic_d must be >= 1");
  return config;
}

void save_run_config(const RunConfig& config, const std::string& path) {
  write_text_file(path, canonical_dump(run_config_to_json(config)));
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(parse_json(read_text_file(path), path));
}

json report_to_json(const sim::SimulationReport& report) {
  json strategies = json::object();
  for (const sim::StrategyMetrics& metrics : report.strategies) {
    json ratios = json::object();
    for (const auto& [threshold, ratio] : metrics.suppressed_promising_ratio)
      ratios[format_double(threshold)] = ratio;
    strategies[to_string(metrics.strategy)] =
        json{{"avg_d", metrics.avg_d},
             {"avg_gts_per_query", metrics.avg_gts_per_query},
             {"suppressed_promising_ratio", ratios},
             {"per_group_cross_tab", metrics.per_group_cross_tab},
             {"assigned_gt_freq_per_group", metrics.assigned_gt_freq_per_group}};
  }
  return json{{"config", run_config_to_json(RunConfig{report.config, report.options})},
              {"seed", report.config.seed},
              {"gt_group_freq", report.gt_group_freq},
              {"query_group_counts", report.query_group_counts},
              {"strategies", strategies}};
}

namespace {

std::string metrics_csv(const sim::SimulationReport& report) {
  std::vector<double> thresholds;
  if (!report.strategies.empty()) {
    for (const auto& [t, ratio] : report.strategies.front().suppressed_promising_ratio)
      thresholds.push_back(t);
  }
  std::string out = "strategy,avg_d,avg_gts_per_query";
  for (double t : thresholds) out += ",suppressed_promising_ratio_" + format_double(t);
  out += "\n";
  for (const sim::StrategyMetrics& metrics : report.strategies) {
    out += to_string(metrics.strategy) + "," + format_double(metrics.avg_d) + "," +
           format_double(metrics.avg_gts_per_query);
    for (double t : thresholds) out += "," + format_double(metrics.suppressed_promising_ratio.at(t));
    out += "\n";
  }
  return out;
}

std::string cross_tab_csv(const sim::StrategyMetrics& metrics) {
  const int n_g = static_cast<int>(metrics.per_group_cross_tab.size());
  std::string out = "gt_group";
  for (int j = 0; j < n_g; ++j) out += ",query_group_" + std::to_string(j);
  out += "\n";
  for (int i = 0; i < n_g; ++i) {
    out += std::to_string(i);
    for (int j = 0; j < n_g; ++j) out += "," + format_double(metrics.per_group_cross_tab[i][j]);
    out += "\n";
  }
  return out;
}

// Static grouped bar chart: GT mass per group next to each strategy's
// share of assigned GTs.
std::string group_frequency_svg(const sim::SimulationReport& report) {
  const int n_g = static_cast<int>(report.gt_group_freq.size());
  const int series = 1 + static_cast<int>(report.strategies.size());
  const double width = 640.0, height = 360.0;
  const double left = 48.0, bottom = 320.0, top = 24.0;
  const double plot_w = width - left - 24.0;
  const double band = plot_w / n_g;
  const double bar = band / (series + 1);
  const char* palette[] = {"#e8973a", "#4878c8", "#50a060", "#c05050", "#9060c0", "#707070"};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\">\n";
  svg += "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
  const auto bar_rect = [&](double x, double value, const char* color) {
    const double h = value * (bottom - top);
    svg += "<rect x=\"" + format_double(x) + "\" y=\"" + format_double(bottom - h) +
           "\" width=\"" + format_double(bar * 0.9) + "\" height=\"" + format_double(h) +
           "\" fill=\"" + color + "\"/>\n";
  };
  for (int g = 0; g < n_g; ++g) {
    const double x0 = left + g * band;
    bar_rect(x0, report.gt_group_freq[g], palette[0]);
    for (std::size_t s = 0; s < report.strategies.size(); ++s)
      bar_rect(x0 + (1 + static_cast<double>(s)) * bar,
               report.strategies[s].assigned_gt_freq_per_group[g],
               palette[(s + 1) % 6]);
    svg += "<text x=\"" + format_double(x0 + band / 2) +
           "\" y=\"340\" font-size=\"12\" text-anchor=\"middle\">group " + std::to_string(g) +
           "</text>\n";
  }
  svg += "<line x1=\"" + format_double(left) + "\" y1=\"" + format_double(bottom) + "\" x2=\"" +
         format_double(left + plot_w) + "\" y2=\"" + format_double(bottom) +
         "\" stroke=\"black\"/>\n";
  double legend_y = 20.0;
  svg += "<text x=\"500\" y=\"" + format_double(legend_y) +
         "\" font-size=\"12\" fill=\"" + std::string(palette[0]) + "\">gt</text>\n";
  for (std::size_t s = 0; s < report.strategies.size(); ++s) {
    legend_y += 14.0;
    svg += "<text x=\"500\" y=\"" + format_double(legend_y) + "\" font-size=\"12\" fill=\"" +
           palette[(s + 1) % 6] + "\">" + to_string(report.strategies[s].strategy) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

void write_report_files(const sim::SimulationReport& report, const std::string& out_dir,
                        bool with_svg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir);

  const std::filesystem::path dir(out_dir);
  write_text_file((dir / "report.json").string(), canonical_dump(report_to_json(report)));
  write_text_file((dir / "metrics.csv").string(), metrics_csv(report));
  for (const sim::StrategyMetrics& metrics : report.strategies)
    write_text_file((dir / ("cross_tab_" + to_string(metrics.strategy) + ".csv")).string(),
                    cross_tab_csv(metrics));
  if (with_svg)
    write_text_file((dir / "group_frequencies.svg").string(), group_frequency_svg(report));
}

json assignment_report_json(const sim::Scene& scene, const AssignmentResult& result,
                            const CostWeights& weights, int scene_index) {
  std::vector<std::pair<int, int>> pairs = result.pairs;
  std::sort(pairs.begin(), pairs.end());

  LossTriple totals;
  json pair_records = json::array();
  std::set<int> assigned;
  for (const auto& [gt_index, query] : pairs) {
    const GtTriplet& gt = scene.gts[gt_index];
    const Prediction& pred = scene.preds[query];
    const LossTriple loss = total_loss(gt, pred, weights);
    totals.subject += loss.subject;
    totals.predicate += loss.predicate;
    totals.object += loss.object;
    assigned.insert(query);
    pair_records.push_back(json{{"gt", gt_index},
                                {"query", query},
                                {"match_cost", match_cost(gt, pred, weights)},
                                {"loss",
                                 json{{"subject", loss.subject},
                                      {"predicate", loss.predicate},
                                      {"object", loss.object}}}});
  }
  // Queries without a GT train toward no-object.
  const GtTriplet null_gt = GtTriplet::null_triplet();
  for (const Prediction& pred : scene.preds) {
    if (assigned.count(pred.query_index)) continue;
    const LossTriple loss = total_loss(null_gt, pred, weights);
    totals.subject += loss.subject;
    totals.predicate += loss.predicate;
    totals.object += loss.object;
  }

  return json{{"scene_index", scene_index},
              {"strategy", to_string(result.strategy)},
              {"total_cost", result.total_cost},
              {"d", result.d},
              {"pairs", pair_records},
              {"loss_total",
               json{{"subject", totals.subject},
                    {"predicate", totals.predicate},
                    {"object", totals.object}}}};
}

}  // namespace speaq::io
