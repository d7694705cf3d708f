// Copyright 2026 The GlobalDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "globaldp/dataset.h"
#include "globaldp/errors.h"
#include "globaldp/experiment.h"
#include "globaldp/federation.h"
#include "globaldp/linear_model.h"
#include "globaldp/model_vector.h"
#include "globaldp/privacy.h"
#include "globaldp/rng.h"

namespace py = pybind11;

namespace globaldp {
namespace {

// Models cross the boundary as plain lists of floats, bias last.
ModelVector ToModel(const std::vector<double>& v) { return ModelVector(v); }
std::vector<double> FromModel(const ModelVector& w) {
  return {w.values().begin(), w.values().end()};
}

}  // namespace
}  // namespace globaldp

PYBIND11_MODULE(_globaldp, m) {
  using namespace globaldp;
  m.doc() = "Globally differentially private federated SVM simulator";

  static py::exception<DomainError> domain_error(m, "DomainError",
                                                 PyExc_ValueError);
  static py::exception<ConfigError> config_error(m, "ConfigError",
                                                 PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError",
                                               PyExc_ValueError);
  static py::exception<ProtocolError> protocol_error(m, "ProtocolError",
                                                     PyExc_RuntimeError);
  static py::exception<IoError> io_error(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ProtocolError& e) {
      py::set_error(protocol_error, e.what());
    } catch (const IoError& e) {
      py::set_error(io_error, e.what());
    }
  });

  // Dataset.
  py::class_<RawRecord>(m, "RawRecord")
      .def_readonly("sample_id", &RawRecord::sample_id)
      .def_readonly("attributes", &RawRecord::attributes)
      .def_readonly("class_code", &RawRecord::class_code)
      .def("has_missing", &RawRecord::HasMissing);
  py::class_<LabeledExample>(m, "LabeledExample")
      .def(py::init<>())
      .def(py::init([](std::vector<double> f, int y) {
             return LabeledExample{std::move(f), y};
           }),
           py::arg("features"), py::arg("label"))
      .def_readwrite("features", &LabeledExample::features)
      .def_readwrite("label", &LabeledExample::label);
  py::class_<ClientShard>(m, "ClientShard")
      .def_readonly("client_id", &ClientShard::client_id)
      .def_readonly("train", &ClientShard::train)
      .def_readonly("pi", &ClientShard::pi);
  py::class_<DatasetSplit>(m, "DatasetSplit")
      .def_readonly("shards", &DatasetSplit::shards)
      .def_readonly("test", &DatasetSplit::test)
      .def_readonly("m", &DatasetSplit::m)
      .def_property_readonly("num_clients", &DatasetSplit::num_clients)
      .def("weights", &DatasetSplit::Weights);

  m.def("parse_bcwd",
        py::overload_cast<const std::filesystem::path&>(&ParseBcwd),
        py::arg("path"));
  m.def(
      "clean_and_normalize",
      [](const std::vector<RawRecord>& records) {
        auto r = CleanAndNormalize(records);
        return py::make_tuple(std::move(r.examples), r.dropped);
      },
      py::arg("records"), "Returns (examples, dropped).");
  m.def(
      "split_and_partition",
      [](const std::vector<LabeledExample>& examples, int v, double frac,
         std::uint64_t seed) { return SplitAndPartition(examples, v, frac, seed); },
      py::arg("examples"),
        py::arg("num_clients"), py::arg("test_fraction") = 0.2,
        py::arg("seed") = 0);

  // Linear model.
  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("local_epochs", &TrainConfig::local_epochs)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("lr_decay", &TrainConfig::lr_decay)
      .def_readwrite("l2_lambda", &TrainConfig::l2_lambda);
  py::class_<EvalMetrics>(m, "EvalMetrics")
      .def_readonly("accuracy", &EvalMetrics::accuracy)
      .def_readonly("hinge_loss", &EvalMetrics::hinge_loss)
      .def_readonly("n_examples", &EvalMetrics::n_examples)
      .def_readonly("correct", &EvalMetrics::correct);

  m.def(
      "hinge_objective",
      [](const std::vector<double>& w, const std::vector<LabeledExample>& data,
         double l2_lambda) { return HingeObjective(ToModel(w), data, l2_lambda); },
      py::arg("w"), py::arg("data"), py::arg("l2_lambda") = 0.0);
  m.def(
      "local_train",
      [](const std::vector<double>& w, const std::vector<LabeledExample>& data,
         const TrainConfig& cfg, std::uint64_t seed) {
        Rng rng(seed);
        return FromModel(LocalTrain(ToModel(w), data, cfg, rng));
      },
      py::arg("w"), py::arg("data"), py::arg("cfg") = TrainConfig{},
      py::arg("seed") = 0);
  m.def(
      "evaluate",
      [](const std::vector<double>& w, const std::vector<LabeledExample>& data) {
        return Evaluate(ToModel(w), data);
      },
      py::arg("w"), py::arg("data"));
  m.def(
      "leakage_demo",
      [](const std::vector<double>& w, const std::vector<double>& x, double y) {
        auto r = LeakageDemo(w, x, y);
        return py::make_tuple(std::move(r.gradient), r.cosine);
      },
      py::arg("w"), py::arg("x"), py::arg("y"), "Returns (gradient, |cos|).");

  // Privacy.
  py::class_<PrivacyParams>(m, "PrivacyParams")
      .def(py::init<>())
      .def_readwrite("epsilon", &PrivacyParams::epsilon)
      .def_readwrite("delta", &PrivacyParams::delta)
      .def_readwrite("clip_bound", &PrivacyParams::clip_bound)
      .def_readwrite("rounds", &PrivacyParams::rounds)
      .def_readwrite("exposures", &PrivacyParams::exposures)
      .def("validate", &PrivacyParams::Validate);
  py::class_<NoisePlan>(m, "NoisePlan")
      .def(py::init<>())
      .def_readwrite("c", &NoisePlan::c)
      .def_readwrite("s_sharing", &NoisePlan::s_sharing)
      .def_readwrite("sigma1", &NoisePlan::sigma1)
      .def_readwrite("s_broadcast", &NoisePlan::s_broadcast)
      .def_readwrite("sigma", &NoisePlan::sigma)
      .def_readwrite("sigma2", &NoisePlan::sigma2)
      .def_property_readonly("server_noise_active",
                             &NoisePlan::server_noise_active);

  m.def("c_factor", &CFactor, py::arg("delta"));
  m.def(
      "clip",
      [](const std::vector<double>& w, double bound) {
        return FromModel(Clip(ToModel(w), bound));
      },
      py::arg("w"), py::arg("bound"));
  m.def("uplink_sensitivity", &UplinkSensitivity, py::arg("clip_bound"),
        py::arg("dataset_size"));
  m.def("downlink_sensitivity", &DownlinkSensitivity, py::arg("clip_bound"),
        py::arg("pi"), py::arg("m"));
  m.def("server_noise_required", &ServerNoiseRequired, py::arg("rounds"),
        py::arg("exposures"), py::arg("num_clients"));
  m.def(
      "plan_noise",
      [](const PrivacyParams& p, int v, std::size_t mm,
         const std::vector<double>& pi) { return PlanNoise(p, v, mm, pi); },
      py::arg("params"), py::arg("num_clients"), py::arg("m"), py::arg("pi"));
  m.def(
      "gaussian_perturb",
      [](const std::vector<double>& w, double sigma, std::uint64_t seed) {
        Rng rng(seed);
        return FromModel(GaussianPerturb(ToModel(w), sigma, rng));
      },
      py::arg("w"), py::arg("sigma"), py::arg("seed") = 0);
  m.def("analytic_gaussian_delta", &AnalyticGaussianDelta,
        py::arg("sensitivity"), py::arg("sigma"), py::arg("epsilon"));
  m.def("dp_bound_check", &DpBoundCheck, py::arg("sensitivity"),
        py::arg("sigma"), py::arg("epsilon"), py::arg("delta"));

  // Federation.
  py::class_<ProtocolResult>(m, "ProtocolResult")
      .def_property_readonly(
          "final_model",
          [](const ProtocolResult& r) { return FromModel(r.final_model); })
      .def_property_readonly("traces", [](const ProtocolResult& r) {
        std::vector<std::string> lines;
        for (const auto& t : r.traces) lines.push_back(TraceToJsonLine(t));
        return lines;
      });
  m.def("run_protocol", &RunProtocol, py::arg("split"), py::arg("params"),
        py::arg("cfg") = TrainConfig{}, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  // Experiments.
  py::enum_<Baseline>(m, "Baseline")
      .value("PRIVATE", Baseline::kPrivate)
      .value("NONPRIVATE_FEDERATED", Baseline::kNonprivateFederated)
      .value("CENTRALIZED", Baseline::kCentralized);
  py::class_<ExperimentGrid>(m, "ExperimentGrid")
      .def(py::init<>())
      .def_readwrite("epsilons", &ExperimentGrid::epsilons)
      .def_readwrite("client_counts", &ExperimentGrid::client_counts)
      .def_readwrite("rounds", &ExperimentGrid::rounds)
      .def_readwrite("exposures", &ExperimentGrid::exposures)
      .def_readwrite("seeds", &ExperimentGrid::seeds)
      .def_readwrite("baselines", &ExperimentGrid::baselines)
      .def_readwrite("dataset_path", &ExperimentGrid::dataset_path)
      .def_readwrite("train", &ExperimentGrid::train)
      .def_readwrite("delta", &ExperimentGrid::delta)
      .def_readwrite("clip_bound", &ExperimentGrid::clip_bound)
      .def_readwrite("test_fraction", &ExperimentGrid::test_fraction)
      .def("validate", &ExperimentGrid::Validate);
  py::class_<ResultRow>(m, "ResultRow")
      .def_property_readonly("baseline",
                             [](const ResultRow& r) {
                               return std::string(BaselineName(r.baseline));
                             })
      .def_readonly("seed", &ResultRow::seed)
      .def_readonly("num_clients", &ResultRow::num_clients)
      .def_readonly("epsilon", &ResultRow::epsilon)
      .def_readonly("round", &ResultRow::round)
      .def_readonly("mean_test_accuracy", &ResultRow::mean_test_accuracy)
      .def_readonly("mean_hinge_loss", &ResultRow::mean_hinge_loss);

  m.def("load_grid_config", &LoadGridConfig, py::arg("path"),
        py::arg("base") = ExperimentGrid{});
  m.def(
      "run_grid",
      [](const ExperimentGrid& grid, int workers) {
        GridResult r;
        {
          py::gil_scoped_release release;
          r = RunGrid(grid, workers);
        }
        std::vector<std::string> errors;
        for (const auto& c : r.cells) {
          if (c.error) errors.push_back(*c.error);
        }
        return py::make_tuple(r.Rows(), errors);
      },
      py::arg("grid"), py::arg("workers") = 1,
      "Returns (rows, cell errors).");
  m.def(
      "format_csv",
      [](const std::vector<ResultRow>& rows) { return FormatCsv(rows); },
      py::arg("rows"));
  m.def(
      "emit_put_plot",
      [](const std::vector<ResultRow>& rows, const std::filesystem::path& p) {
        return EmitPutPlot(rows, p).series;
      },
      py::arg("rows"), py::arg("path"));
  m.def(
      "emit_epochs_plot",
      [](const std::vector<ResultRow>& rows, const std::filesystem::path& p) {
        auto s = EmitEpochsPlot(rows, p);
        return py::make_tuple(s.series, s.warnings);
      },
      py::arg("rows"), py::arg("path"));
}
