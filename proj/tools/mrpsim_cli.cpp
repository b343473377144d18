// Command-line front end: validate, simulate, grid, analyze, tables.

#include <cmath>
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "mrpsim/experiment.hpp"
#include "mrpsim/simulation.hpp"

using namespace mrpsim;

namespace {

constexpr int kOk = 0;
constexpr int kCellFailure = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string config;
};

SystemConstants constants_from(const Globals& g) { return g.config.empty() ? SystemConstants{} : load_constants(g.config); }

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_validate(const Globals& g) {
  const auto constants = constants_from(g);
  std::cout << "planned utilization\n";
  for (const auto& row : utilization_table(constants)) {
    std::cout << "M" << row.machine.value << ' ' << row.scenario << ' ' << fmt(row.utilization, 3) << "  ("
              << row.lots_per_period << " lots, " << row.pieces_per_period << " pcs per period)\n";
  }
  const auto full = GridSpec::full();
  std::size_t unbiased = 0;
  for (const auto& i : full.instances) unbiased += i.bias == BiasKind::Unbiased;
  std::cout << "grid\n"
            << "parameter sets per instance: " << full.params_per_instance() << '\n'
            << "unbiased instances: " << unbiased << '\n'
            << "biased instances: " << full.instances.size() - unbiased << '\n'
            << "modes: " << full.modes.size() << '\n'
            << "replications: " << full.replications << '\n'
            << "total cells: " << full.cell_count() << '\n'
            << "config hash: " << config_hash(constants) << '\n';
  return kOk;
}

struct SimulateArgs {
  double alpha = 0.02;
  int beta = 0;
  std::string bias = "unbiased";
  std::string utilization = "low";
  std::string mode = "standard";
  double sst = 0.6;
  int plt = 1;
  std::string policy = "FOP:1";
  Pieces comp_lot = 800;
  int replication = 0;
  Period run_length = 400;
  Period warmup = 40;
  bool verbose = false;
  std::string dump_forecasts;
  std::string replay;
  std::string mrp_trace;
  std::string event_trace;
  std::string update_timing = "before_mrp";
  std::string receipts = "due";
  std::string component_timing = "parent_due";
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  Instance inst{a.alpha, a.beta, parse_bias(a.bias), parse_utilization(a.utilization)};
  inst.validate();
  SystemCache systems(constants_from(g));
  RunConfig cfg;
  cfg.system = systems.get(inst.utilization);
  cfg.scenario = inst.scenario();
  cfg.params.sst_factor = a.sst;
  cfg.params.plt = a.plt;
  cfg.params.policy = LotPolicy::parse(a.policy);
  cfg.params.component_lot = a.comp_lot;
  cfg.params.mode = parse_mode(a.mode);
  cfg.seed = replication_seed(g.seed, a.replication);
  cfg.run_length = a.run_length;
  cfg.warmup = a.warmup;
  cfg.model.update_timing = parse_update_timing(a.update_timing);
  cfg.model.receipts = parse_receipt_projection(a.receipts);
  cfg.model.component_timing = parse_component_timing(a.component_timing);
  cfg.record_forecasts = !a.dump_forecasts.empty();
  cfg.trace_mrp = !a.mrp_trace.empty();
  cfg.trace_events = !a.event_trace.empty();
  if (!a.replay.empty()) cfg.replay = to_replay_table(read_stream_dump(a.replay));
  if (a.verbose) cfg.log = &std::cerr;
  cfg.validate();

  Simulation sim(cfg);
  const auto s = sim.run();

  if (!a.dump_forecasts.empty()) write_stream_dump(sim.forecasts().records(), a.dump_forecasts);
  if (!a.mrp_trace.empty()) {
    std::ofstream out(a.mrp_trace);
    write_mrp_trace(out, sim.mrp_trace(), true);
  }
  if (!a.event_trace.empty()) {
    std::ofstream out(a.event_trace);
    sim.shop().write_trace(out);
  }

  std::cout << "instance: " << inst.id() << '\n'
            << "params: mode " << to_string(cfg.params.mode) << ", SST " << a.sst << ", PLT " << a.plt << ", "
            << cfg.params.policy.to_string() << ", component FOQ " << a.comp_lot << '\n'
            << "seed: " << cfg.seed << '\n'
            << "overall_cost: " << fmt(s.overall_cost, 2) << '\n'
            << "wip_cost: " << fmt(s.wip_cost, 2) << '\n'
            << "fgi_cost: " << fmt(s.fgi_cost, 2) << '\n'
            << "backorder_cost: " << fmt(s.backorder_cost, 2) << '\n'
            << "service_level: " << fmt(s.service_level, 4) << '\n'
            << "n_final_orders: " << s.n_final_orders << '\n'
            << "leadtime: " << fmt(s.leadtime_mean, 3) << " +- " << fmt(s.leadtime_sd, 3) << '\n';
  for (const auto& [m, u] : s.utilization) std::cout << "utilization M" << m.value << ": " << fmt(u, 4) << '\n';
  return kOk;
}

struct GridArgs {
  std::string preset = "desk";
  std::string out;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool dry_run = false;
  int replications = 0;
  Period run_length = 0;
  std::string update_timing = "before_mrp";
  std::string receipts = "due";
  std::string component_timing = "parent_due";
};

int cmd_grid(const Globals& g, const GridArgs& a) {
  auto grid = GridSpec::preset(a.preset);
  if (a.replications > 0) grid.replications = a.replications;
  if (a.run_length > 0) grid.run_length = a.run_length;
  grid.model.update_timing = parse_update_timing(a.update_timing);
  grid.model.receipts = parse_receipt_projection(a.receipts);
  grid.model.component_timing = parse_component_timing(a.component_timing);
  grid.validate();
  if (a.dry_run) {
    std::cout << grid.cell_count() << " cells\n"
              << grid.instances.size() << " instances x " << grid.params_per_instance() << " parameter sets x "
              << grid.modes.size() << " modes x " << grid.replications << " replications\n";
    return kOk;
  }
  if (a.out.empty()) throw CLI::ValidationError("--out", "required unless --dry-run");

  std::filesystem::create_directories(a.out);
  const auto results_path = std::filesystem::path(a.out) / "results.csv";
  std::set<std::string> done;
  if (std::filesystem::exists(results_path))
    for (const auto& r : read_results(results_path)) done.insert(r.key());

  std::vector<Cell> todo;
  for (auto& c : enumerate(grid)) {
    ResultRow probe;
    probe.instance = c.instance;
    probe.mode = c.params.mode;
    probe.sst_factor = c.params.sst_factor;
    probe.plt = c.params.plt;
    probe.policy = c.params.policy;
    probe.comp_lot = c.params.component_lot;
    probe.replication = c.replication;
    if (!done.count(probe.key())) todo.push_back(c);
  }
  std::cerr << todo.size() << " of " << grid.cell_count() << " cells to run on " << a.workers << " workers\n";

  SystemCache systems(constants_from(g));
  const std::size_t step = std::max<std::size_t>(1, todo.size() / 20);
  auto outcome = run_grid(todo, systems, g.seed, grid.run_length, grid.warmup, a.workers, [&](std::size_t n) {
    if (n % step == 0 || n == todo.size()) std::cerr << "  " << n << "/" << todo.size() << '\n';
  }, grid.model);
  write_results(results_path, outcome.rows, true);
  write_manifest(std::filesystem::path(a.out) / "manifest.txt",
                 {grid.name, g.seed, grid.cell_count(), outcome.failures.size(), a.workers,
                  config_hash(systems.constants()), grid.model});
  for (const auto& f : outcome.failures) std::cerr << "failed: " << f.message << '\n';
  std::cout << outcome.rows.size() << " rows written to " << results_path.string() << '\n';
  return outcome.failures.empty() ? kOk : kCellFailure;
}

std::vector<ResultRow> load_dir(const std::string& dir) {
  return read_results(std::filesystem::path(dir) / "results.csv");
}

int cmd_analyze(const std::string& in, bool paired) {
  const auto comparisons = analyze(load_dir(in), paired);
  std::cout << "instance,standard_best,extended_best,reduction,p_value,stars,standard_params,extended_params\n";
  for (const auto& c : comparisons) {
    auto params = [](const BestCell& b) {
      return "SST " + fmt(b.params.sst_factor, 1) + " PLT " + std::to_string(b.params.plt) + " " +
             b.params.policy.to_string() + " C" + std::to_string(b.params.component_lot);
    };
    std::cout << c.instance.id() << ',' << fmt(c.standard.mean_cost, 2) << ',' << fmt(c.extended.mean_cost, 2) << ','
              << fmt(100 * c.cost_reduction, 2) << "%," << (std::isnan(c.p_value) ? std::string("n/a") : fmt(c.p_value, 6)) << ',' << stars(c.significance) << ','
              << params(c.standard) << ',' << params(c.extended) << '\n';
  }
  return kOk;
}

int cmd_tables(const std::string& in, bool paired) {
  for (const auto& t : render_tables(load_dir(in), paired)) {
    std::cout << t.to_text() << '\n';
    std::ofstream out(std::filesystem::path(in) / (t.name + ".csv"));
    out << t.to_csv();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rolling-horizon MRP simulation: standard vs safety-stock-exploiting netting"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "base seed")->capture_default_str();
  app.add_option("--config", g.config, "JSON file overriding system constants")->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate", "print planned utilizations and grid sizes");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "run one replication and print its summary");
  simulate->add_option("--alpha", sa.alpha, "forecast update std as a fraction of 800")->capture_default_str();
  simulate->add_option("--beta", sa.beta, "bias switch (0 or 1)")->capture_default_str();
  simulate->add_option("--bias", sa.bias, "unbiased|temp_over|temp_under|perm_over|perm_under")->capture_default_str();
  simulate->add_option("--utilization", sa.utilization, "low|medium|high")->capture_default_str();
  simulate->add_option("--mode", sa.mode, "standard|extended")->capture_default_str();
  simulate->add_option("--sst", sa.sst, "safety stock factor")->capture_default_str();
  simulate->add_option("--plt", sa.plt, "planned lead time")->capture_default_str();
  simulate->add_option("--policy", sa.policy, "FOP:n or FOQ:q")->capture_default_str();
  simulate->add_option("--comp-lot", sa.comp_lot, "component FOQ quantity")->capture_default_str();
  simulate->add_option("--replication", sa.replication, "replication index")->capture_default_str();
  simulate->add_option("--run-length", sa.run_length)->capture_default_str();
  simulate->add_option("--warmup", sa.warmup)->capture_default_str();
  simulate->add_option("--update-timing", sa.update_timing, "after_release|before_mrp")->capture_default_str();
  simulate->add_option("--receipts", sa.receipts, "completion|due")->capture_default_str();
  simulate->add_option("--component-timing", sa.component_timing, "parent_start|parent_due")->capture_default_str();
  simulate->add_flag("--verbose", sa.verbose, "per-period log on stderr");
  simulate->add_option("--dump-forecasts", sa.dump_forecasts, "write forecast updates CSV");
  simulate->add_option("--replay", sa.replay, "replay forecast updates from CSV")->check(CLI::ExistingFile);
  simulate->add_option("--mrp-trace", sa.mrp_trace, "write MRP tables CSV");
  simulate->add_option("--event-trace", sa.event_trace, "write shop-floor event CSV");

  GridArgs ga;
  auto* grid = app.add_subcommand("grid", "run a preset experiment grid");
  grid->add_option("--preset", ga.preset, "desk|bias|null|full")->capture_default_str();
  grid->add_option("--out", ga.out, "output directory");
  grid->add_option("--workers", ga.workers, "worker threads")->envname("MRPSIM_WORKERS")->capture_default_str();
  grid->add_option("--update-timing", ga.update_timing, "after_release|before_mrp")->capture_default_str();
  grid->add_option("--receipts", ga.receipts, "completion|due")->capture_default_str();
  grid->add_option("--component-timing", ga.component_timing, "parent_start|parent_due")->capture_default_str();
  grid->add_flag("--dry-run", ga.dry_run, "print the cell count only");
  grid->add_option("--replications", ga.replications, "override replications");
  grid->add_option("--run-length", ga.run_length, "override run length");

  std::string in;
  bool paired = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "best parameters per instance and mode, with significance");
  analyze_cmd->add_option("--in", in, "grid output directory")->required();
  analyze_cmd->add_flag("--paired", paired, "paired t-test on per-replication differences");
  auto* tables = app.add_subcommand("tables", "render result tables (text to stdout, CSV into --in)");
  tables->add_option("--in", in, "grid output directory")->required();
  tables->add_flag("--paired", paired, "paired t-test on per-replication differences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(g);
    if (*simulate) return cmd_simulate(g, sa);
    if (*grid) return cmd_grid(g, ga);
    if (*analyze_cmd) return cmd_analyze(in, paired);
    if (*tables) return cmd_tables(in, paired);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCellFailure;
  }
  return kUsage;
}
