#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "speaq/errors.hpp"
#include "speaq/io.hpp"
#include "speaq/simulator.hpp"
#include "speaq/strategies.hpp"
#include "speaq/verify.hpp"

namespace py = pybind11;
using namespace speaq;

namespace {

CostMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw LengthMismatchError("cost matrix must be square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return CostMatrix(n, std::move(entries));
}

py::dict assignment_to_dict(const Assignment& a) {
  py::dict out;
  out["perm"] = a.perm;
  out["total_cost"] = a.total_cost;
  return out;
}

py::dict result_to_dict(const AssignmentResult& r) {
  py::dict out;
  out["strategy"] = to_string(r.strategy);
  out["pairs"] = r.pairs;
  out["d"] = r.d;
  out["total_cost"] = r.total_cost;
  return out;
}

}  // namespace

PYBIND11_MODULE(_speaq, m) {
  m.doc() = "Groupwise query specialization and quality-aware multi-assignment";

  py::register_exception<Error>(m, "SpeaqError");

  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<double, double, double, double>(), py::arg("x_min"), py::arg("y_min"),
           py::arg("x_max"), py::arg("y_max"))
      .def_readwrite("x_min", &BoundingBox::x_min)
      .def_readwrite("y_min", &BoundingBox::y_min)
      .def_readwrite("x_max", &BoundingBox::x_max)
      .def_readwrite("y_max", &BoundingBox::y_max)
      .def("area", &BoundingBox::area)
      .def("__repr__", [](const BoundingBox& b) {
        return "BoundingBox(" + std::to_string(b.x_min) + ", " + std::to_string(b.y_min) + ", " +
               std::to_string(b.x_max) + ", " + std::to_string(b.y_max) + ")";
      });

  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def("giou", &giou, py::arg("a"), py::arg("b"));
  m.def("l1_box_distance", &l1_box_distance, py::arg("a"), py::arg("b"));

  m.attr("FORBIDDEN") = kForbidden;
  m.def(
      "hungarian",
      [](const std::vector<std::vector<double>>& rows) {
        return assignment_to_dict(hungarian(matrix_from_rows(rows)));
      },
      py::arg("costs"), "Exact minimum-cost assignment; use FORBIDDEN (inf) to ban entries.");
  m.def(
      "brute_force_assignment",
      [](const std::vector<std::vector<double>>& rows) {
        return assignment_to_dict(brute_force_assignment(matrix_from_rows(rows)));
      },
      py::arg("costs"), "Exhaustive oracle for matrices up to 8x8.");

  py::class_<PredicateGrouping>(m, "PredicateGrouping")
      .def(py::init<std::vector<std::vector<int>>, std::vector<double>>(), py::arg("groups"),
           py::arg("group_freq"))
      .def_property_readonly("groups", &PredicateGrouping::groups)
      .def_property_readonly("group_freq", &PredicateGrouping::group_freq)
      .def("group_of", &PredicateGrouping::group_of, py::arg("predicate_id"));

  py::class_<QueryGrouping>(m, "QueryGrouping")
      .def(py::init<std::vector<int>>(), py::arg("counts"))
      .def_property_readonly("counts", &QueryGrouping::counts)
      .def_property_readonly("total_queries", &QueryGrouping::total_queries)
      .def("range", &QueryGrouping::range, py::arg("group"))
      .def("group_of", &QueryGrouping::group_of, py::arg("query_index"));

  m.def(
      "group_predicates",
      [](const std::vector<std::pair<int, std::int64_t>>& counts, int n_g) {
        return group_predicates(FrequencyTable::from_counts(counts), n_g);
      },
      py::arg("counts"), py::arg("n_g"),
      "Frequency-based predicate grouping from (predicate_id, count) pairs.");
  m.def("group_queries", &group_queries, py::arg("predicate_grouping"), py::arg("n_q"));
  m.def(
      "grouping_cost",
      [](std::optional<int> gt_group, int query_group) {
        return grouping_cost(gt_group, query_group);
      },
      py::arg("gt_group"), py::arg("query_group"),
      "0 for matching groups or a null GT (gt_group=None), FORBIDDEN otherwise.");

  py::class_<GtTriplet>(m, "GtTriplet")
      .def(py::init([](const BoundingBox& s_box, const BoundingBox& o_box, int s_cls, int o_cls,
                       int p_cls) {
             GtTriplet gt;
             gt.subject_box = s_box;
             gt.object_box = o_box;
             gt.subject_class = s_cls;
             gt.object_class = o_cls;
             gt.predicate_class = p_cls;
             return gt;
           }),
           py::arg("subject_box"), py::arg("object_box"), py::arg("subject_class"),
           py::arg("object_class"), py::arg("predicate_class"))
      .def_static("null_triplet", &GtTriplet::null_triplet)
      .def_readwrite("subject_box", &GtTriplet::subject_box)
      .def_readwrite("object_box", &GtTriplet::object_box)
      .def_readwrite("predicate_box", &GtTriplet::predicate_box)
      .def_readwrite("subject_class", &GtTriplet::subject_class)
      .def_readwrite("object_class", &GtTriplet::object_class)
      .def_readwrite("predicate_class", &GtTriplet::predicate_class)
      .def_readwrite("is_null", &GtTriplet::is_null);

  py::class_<Prediction>(m, "Prediction")
      .def(py::init([](const BoundingBox& s_box, const BoundingBox& o_box,
                       std::vector<double> s_probs, std::vector<double> o_probs,
                       std::vector<double> p_probs, int query_index) {
             Prediction pred;
             pred.subject_box = s_box;
             pred.object_box = o_box;
             pred.subject_probs = std::move(s_probs);
             pred.object_probs = std::move(o_probs);
             pred.predicate_probs = std::move(p_probs);
             pred.query_index = query_index;
             return pred;
           }),
           py::arg("subject_box"), py::arg("object_box"), py::arg("subject_probs"),
           py::arg("object_probs"), py::arg("predicate_probs"), py::arg("query_index"))
      .def_readwrite("subject_box", &Prediction::subject_box)
      .def_readwrite("object_box", &Prediction::object_box)
      .def_readwrite("predicate_box", &Prediction::predicate_box)
      .def_readwrite("subject_probs", &Prediction::subject_probs)
      .def_readwrite("object_probs", &Prediction::object_probs)
      .def_readwrite("predicate_probs", &Prediction::predicate_probs)
      .def_readwrite("query_index", &Prediction::query_index);

  py::class_<CostWeights>(m, "CostWeights")
      .def(py::init<>())
      .def(py::init([](double w_cls, double w_l1, double w_giou, bool include_predicate_box) {
             return CostWeights{w_cls, w_l1, w_giou, include_predicate_box};
           }),
           py::arg("w_cls") = 1.0, py::arg("w_l1") = 5.0, py::arg("w_giou") = 2.0,
           py::arg("include_predicate_box") = false)
      .def_readwrite("w_cls", &CostWeights::w_cls)
      .def_readwrite("w_l1", &CostWeights::w_l1)
      .def_readwrite("w_giou", &CostWeights::w_giou)
      .def_readwrite("include_predicate_box", &CostWeights::include_predicate_box);

  py::class_<QualityConfig>(m, "QualityConfig")
      .def(py::init([](int k, double lambda_rel, const std::string& relation_fn) {
             return QualityConfig{k, lambda_rel, relation_fn_from_string(relation_fn)};
           }),
           py::arg("k") = 5, py::arg("lambda_rel") = -0.5, py::arg("relation_fn") = "max")
      .def_readwrite("k", &QualityConfig::k)
      .def_readwrite("lambda_rel", &QualityConfig::lambda_rel);

  m.def("entity_cost", &entity_cost, py::arg("class_id"), py::arg("gt_box"), py::arg("probs"),
        py::arg("pred_box"), py::arg("weights"));
  m.def("match_cost", &match_cost, py::arg("gt"), py::arg("pred"), py::arg("weights"));
  m.def(
      "total_loss",
      [](const GtTriplet& gt, const Prediction& pred, const CostWeights& lw) {
        const LossTriple loss = total_loss(gt, pred, lw);
        return py::make_tuple(loss.subject, loss.predicate, loss.object);
      },
      py::arg("gt"), py::arg("pred"), py::arg("loss_weights"));

  m.def(
      "quality_vectors",
      [](const GtTriplet& gt, const std::vector<Prediction>& preds, const QualityConfig& qc) {
        const QualityVectors qv = quality_vectors(gt, preds, qc);
        py::dict out;
        out["v_s"] = qv.v_s;
        out["v_o"] = qv.v_o;
        out["v_r"] = qv.v_r;
        out["v"] = qv.v;
        return out;
      },
      py::arg("gt"), py::arg("preds"), py::arg("quality"));
  m.def(
      "compute_d",
      [](const std::vector<double>& v, const QualityConfig& qc) {
        QualityVectors qv;
        qv.v = v;
        return compute_d(qv, qc);
      },
      py::arg("v"), py::arg("quality"), "Adaptive duplication count from a combined vector.");

  m.def(
      "speaq_assign",
      [](const std::vector<GtTriplet>& gts, const std::vector<Prediction>& preds,
         const PredicateGrouping& pg, const QueryGrouping& qg, const CostWeights& w,
         const QualityConfig& qc) {
        return result_to_dict(speaq_assign(gts, preds, pg, qg, w, qc));
      },
      py::arg("gts"), py::arg("preds"), py::arg("predicate_grouping"),
      py::arg("query_grouping"), py::arg("weights") = CostWeights{},
      py::arg("quality") = QualityConfig{});
  m.def(
      "single_assign",
      [](const std::vector<GtTriplet>& gts, const std::vector<Prediction>& preds,
         const CostWeights& w) { return result_to_dict(single_assign(gts, preds, w)); },
      py::arg("gts"), py::arg("preds"), py::arg("weights") = CostWeights{});
  m.def(
      "agnostic_multi_assign",
      [](const std::vector<GtTriplet>& gts, const std::vector<Prediction>& preds,
         const CostWeights& w, int d_const) {
        return result_to_dict(agnostic_multi_assign(gts, preds, w, d_const));
      },
      py::arg("gts"), py::arg("preds"), py::arg("weights") = CostWeights{},
      py::arg("d_const") = 3);
  m.def(
      "iou_assign",
      [](const std::vector<GtTriplet>& gts, const std::vector<Prediction>& preds,
         double threshold) { return result_to_dict(iou_assign(gts, preds, threshold)); },
      py::arg("gts"), py::arg("preds"), py::arg("iou_threshold") = 0.5);

  m.def(
      "simulate",
      [](const std::string& config_json, int threads) {
        const io::RunConfig config =
            io::run_config_from_json(io::json::parse(config_json));
        const sim::SimulationReport report =
            sim::run_comparison(config.scenario, config.options, threads);
        return io::canonical_dump(io::report_to_json(report));
      },
      py::arg("config_json"), py::arg("threads") = 1,
      "Run the strategy comparison for a config JSON string; returns the canonical report "
      "JSON.");
  m.def("default_config_json", []() {
    return io::canonical_dump(io::run_config_to_json(io::RunConfig{}));
  });

  m.def(
      "verify_oracle",
      [](int trials, int max_n, std::uint64_t seed) {
        const verify::SuiteResult r = verify::oracle_equivalence(trials, max_n, seed);
        return py::make_tuple(r.trials, r.failures);
      },
      py::arg("trials") = 1000, py::arg("max_n") = 7, py::arg("seed") = 42);
}
