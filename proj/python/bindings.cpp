#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mrpsim/experiment.hpp"
#include "mrpsim/mrp.hpp"
#include "mrpsim/simulation.hpp"

namespace py = pybind11;
using namespace mrpsim;

namespace {

ModelOptions model_options(const std::string& update_timing, const std::string& receipts,
                           const std::string& component_timing) {
  ModelOptions m;
  m.update_timing = parse_update_timing(update_timing);
  m.receipts = parse_receipt_projection(receipts);
  m.component_timing = parse_component_timing(component_timing);
  return m;
}

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["overall_cost"] = s.overall_cost;
  d["wip_cost"] = s.wip_cost;
  d["fgi_cost"] = s.fgi_cost;
  d["backorder_cost"] = s.backorder_cost;
  d["service_level"] = s.service_level;
  d["n_final_orders"] = s.n_final_orders;
  d["leadtime_mean"] = s.leadtime_mean;
  d["leadtime_sd"] = s.leadtime_sd;
  d["measured_periods"] = s.measured_periods;
  py::dict util;
  for (const auto& [m, u] : s.utilization) util[py::int_(m.value)] = u;
  d["utilization"] = util;
  return d;
}

std::string rows_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_results(os, rows);
  return os.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  return read_results(in, "<python>");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rolling-horizon MRP simulation core";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.attr("version") = std::string(code_version());

  m.def("net_standard", &net_requirements_standard, py::arg("y_prev"), py::arg("gross"), py::arg("receipts"),
        py::arg("safety_stock"));
  m.def("net_extended", &net_requirements_extended, py::arg("y_prev"), py::arg("gross"), py::arg("receipts"),
        py::arg("safety_stock"), py::arg("t"), py::arg("delta"));

  m.def(
      "lot_size",
      [](const std::vector<Pieces>& net, const std::string& policy, Period first_period) {
        const auto p = LotPolicy::parse(policy);
        auto lots = p.kind == LotPolicyKind::FOP ? lot_size_fop(net, p.param, first_period)
                                                 : lot_size_foq(net, p.param, first_period);
        py::list out;
        for (const auto& l : lots) {
          py::dict d;
          d["quantity"] = l.quantity;
          d["due"] = l.due;
          d["covered_first"] = l.covered_first;
          d["covered_last"] = l.covered_last;
          out.append(d);
        }
        return out;
      },
      py::arg("net"), py::arg("policy"), py::arg("first_period") = 0, "Lot sizes for FOP:<n> or FOQ:<q>.");

  m.def(
      "utilization_table",
      [] {
        py::list out;
        for (const auto& r : utilization_table())
          out.append(py::make_tuple(r.machine.value, r.scenario, r.utilization));
        return out;
      },
      "(machine, scenario, planned utilization) for every machine.");

  m.def(
      "cell_count", [](const std::string& preset) { return GridSpec::preset(preset).cell_count(); },
      py::arg("preset"));

  m.def(
      "simulate",
      [](double alpha, int beta, const std::string& bias, const std::string& utilization, const std::string& mode,
         double sst, int plt, const std::string& policy, Pieces comp_lot, int replication, std::uint64_t seed,
         Period run_length, Period warmup, const std::string& update_timing, const std::string& receipts,
         const std::string& component_timing) {
        Instance inst{alpha, beta, parse_bias(bias), parse_utilization(utilization)};
        inst.validate();
        RunConfig c;
        c.system = std::make_shared<const ProductionSystem>(build_default_system(inst.utilization));
        c.scenario = inst.scenario();
        c.params.sst_factor = sst;
        c.params.plt = plt;
        c.params.policy = LotPolicy::parse(policy);
        c.params.component_lot = comp_lot;
        c.params.mode = parse_mode(mode);
        c.seed = replication_seed(seed, replication);
        c.run_length = run_length;
        c.warmup = warmup;
        c.model = model_options(update_timing, receipts, component_timing);
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = run(c);
        }
        return summary_dict(s);
      },
      py::arg("alpha") = 0.02, py::arg("beta") = 0, py::arg("bias") = "unbiased", py::arg("utilization") = "low",
      py::arg("mode") = "standard", py::arg("sst") = 0.2, py::arg("plt") = 1, py::arg("policy") = "FOP:1",
      py::arg("comp_lot") = 800, py::arg("replication") = 0, py::arg("seed") = 1, py::arg("run_length") = 400,
      py::arg("warmup") = 40, py::arg("update_timing") = "before_mrp", py::arg("receipts") = "due",
      py::arg("component_timing") = "parent_due", "One replication; returns the KPI summary as a dict.");

  m.def(
      "run_preset",
      [](const std::string& preset, std::uint64_t seed, unsigned workers, int replications, Period run_length) {
        auto grid = GridSpec::preset(preset);
        if (replications > 0) grid.replications = replications;
        if (run_length > 0) grid.run_length = run_length;
        grid.validate();
        const SystemCache systems;
        GridOutcome out;
        {
          py::gil_scoped_release release;
          out = run_grid(enumerate(grid), systems, seed, grid.run_length, grid.warmup, workers, {}, grid.model);
        }
        if (!out.failures.empty()) throw std::runtime_error(out.failures.front().message);
        return rows_csv(out.rows);
      },
      py::arg("preset"), py::arg("seed") = 1, py::arg("workers") = 1, py::arg("replications") = 0,
      py::arg("run_length") = 0, "Runs a preset grid; returns the results CSV text.");

  m.def(
      "analyze",
      [](const std::string& results_csv, bool paired) {
        py::list out;
        for (const auto& c : analyze(rows_from_csv(results_csv), paired)) {
          py::dict d;
          d["instance"] = c.instance.id();
          d["standard"] = c.standard.mean_cost;
          d["extended"] = c.extended.mean_cost;
          d["reduction"] = c.cost_reduction;
          d["p_value"] = c.p_value;
          d["stars"] = std::string(stars(c.significance));
          out.append(d);
        }
        return out;
      },
      py::arg("results_csv"), py::arg("paired") = false);

  m.def(
      "tables",
      [](const std::string& results_csv, bool paired) {
        py::dict out;
        for (const auto& t : render_tables(rows_from_csv(results_csv), paired)) out[py::str(t.name)] = t.to_csv();
        return out;
      },
      py::arg("results_csv"), py::arg("paired") = false, "Table name -> CSV text.");
}
