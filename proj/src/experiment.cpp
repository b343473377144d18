#include "mrpsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "csv.hpp"
#include "mrpsim/simulation.hpp"
#include "mrpsim/stats.hpp"

#ifndef MRPSIM_VERSION
#define MRPSIM_VERSION "0.0.0"
#endif

namespace mrpsim {

using csv::format_double;

std::string Instance::id() const {
  return std::string(to_string(utilization)) + "-" + std::string(to_string(bias)) + "-b" + std::to_string(beta) +
         "-a" + format_double(alpha);
}

void Instance::validate() const {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw ConfigError("alpha must be a finite value >= 0");
  if (beta != 0 && beta != 1) throw ConfigError("beta must be 0 or 1");
  if (beta == 0 && bias != BiasKind::Unbiased) throw ConfigError("a bias schedule requires beta = 1");
}

std::vector<Instance> unbiased_instances(const std::vector<double>& alphas,
                                         const std::vector<UtilizationLevel>& levels) {
  std::vector<Instance> out;
  for (auto level : levels)
    for (double a : alphas) out.push_back({a, 0, BiasKind::Unbiased, level});
  return out;
}

std::vector<Instance> biased_instances(const std::vector<double>& alphas, const std::vector<UtilizationLevel>& levels,
                                       const std::vector<BiasKind>& kinds) {
  std::vector<Instance> out;
  for (auto level : levels)
    for (double a : alphas)
      for (auto kind : kinds) out.push_back({a, 1, kind, level});
  return out;
}

std::size_t GridSpec::params_per_instance() const {
  return ssts.size() * plts.size() * (fops.size() + foqs.size()) * comp_lots.size();
}

std::size_t GridSpec::cell_count() const {
  return instances.size() * params_per_instance() * modes.size() * static_cast<std::size_t>(replications);
}

void GridSpec::validate() const {
  if (instances.empty()) throw ConfigError("grid has no instances");
  if (ssts.empty() || plts.empty() || comp_lots.empty() || modes.empty())
    throw ConfigError("grid has an empty parameter set");
  if (fops.empty() && foqs.empty()) throw ConfigError("grid has no lot-sizing policy");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (run_length < 1 || warmup < 0 || warmup >= run_length) throw ConfigError("invalid run length / warm-up");
  for (const auto& i : instances) i.validate();
  for (auto mode : modes)
    for (const auto& p : parameter_sets(mode)) p.validate();
}

std::vector<PlanningParams> GridSpec::parameter_sets(MrpMode mode) const {
  std::vector<LotPolicy> policies;
  for (int p : fops) policies.push_back(LotPolicy::fop(p));
  for (int q : foqs) policies.push_back(LotPolicy::foq(q));
  std::vector<PlanningParams> out;
  for (double s : ssts)
    for (int plt : plts)
      for (const auto& pol : policies)
        for (Pieces c : comp_lots) {
          PlanningParams p;
          p.sst_factor = s;
          p.plt = plt;
          p.policy = pol;
          p.component_lot = c;
          p.mode = mode;
          out.push_back(p);
        }
  return out;
}

GridSpec GridSpec::full() {
  GridSpec g;
  g.name = "full";
  std::vector<UtilizationLevel> levels(kAllUtilizationLevels.begin(), kAllUtilizationLevels.end());
  g.instances = unbiased_instances(kAlphaLevels, levels);
  auto biased = biased_instances(kAlphaLevels, levels);
  g.instances.insert(g.instances.end(), biased.begin(), biased.end());
  return g;
}

namespace {

GridSpec reduced_grid() {
  GridSpec g;
  g.ssts = {0.2, 0.4, 0.6, 1.5};
  g.plts = {1, 3, 4};
  g.fops = {1};
  g.foqs = {200, 400};
  g.comp_lots = {800};
  g.replications = 10;
  return g;
}

}  // namespace

GridSpec GridSpec::desk() {
  GridSpec g = reduced_grid();
  g.name = "desk";
  g.instances = unbiased_instances({0.02, 0.06, 0.10}, {UtilizationLevel::Low});
  return g;
}

GridSpec GridSpec::bias() {
  GridSpec g = reduced_grid();
  g.name = "bias";
  g.instances = biased_instances({0.06}, {UtilizationLevel::Low}, {BiasKind::PermOver, BiasKind::PermUnder});
  return g;
}

GridSpec GridSpec::null_scenario() {
  GridSpec g;
  g.name = "null";
  g.instances = unbiased_instances({0.0}, {UtilizationLevel::Low});
  g.fops = {1};
  g.foqs = {800};
  g.modes = {MrpMode::Standard};
  return g;
}

GridSpec GridSpec::preset(std::string_view name) {
  if (name == "desk") return desk();
  if (name == "bias") return bias();
  if (name == "null") return null_scenario();
  if (name == "full") return full();
  throw ConfigError("unknown preset '" + std::string(name) + "' (allowed: " + std::string(kPresetNames) + ")");
}

std::vector<Cell> enumerate(const GridSpec& grid) {
  grid.validate();
  std::vector<Cell> cells;
  cells.reserve(grid.cell_count());
  for (const auto& inst : grid.instances)
    for (auto mode : grid.modes)
      for (const auto& p : grid.parameter_sets(mode))
        for (int r = 0; r < grid.replications; ++r) cells.push_back({cells.size(), inst, p, r});
  return cells;
}

PlanningParams ResultRow::params() const {
  PlanningParams p;
  p.sst_factor = sst_factor;
  p.plt = plt;
  p.policy = policy;
  p.component_lot = comp_lot;
  p.mode = mode;
  return p;
}

std::string ResultRow::key() const {
  return instance.id() + "|" + std::string(to_string(mode)) + "|" + format_double(sst_factor) + "|" +
         std::to_string(plt) + "|" + policy.to_string() + "|" + std::to_string(comp_lot) + "|" +
         std::to_string(replication);
}

std::uint64_t replication_seed(std::uint64_t base_seed, int replication) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(replication)});
}

SystemCache::SystemCache(SystemConstants constants) : constants_(std::move(constants)) {
  for (auto level : kAllUtilizationLevels)
    systems_[level] = std::make_shared<const ProductionSystem>(build_default_system(level, constants_));
}

std::shared_ptr<const ProductionSystem> SystemCache::get(UtilizationLevel level) const { return systems_.at(level); }

ResultRow run_cell(const Cell& cell, const SystemCache& systems, std::uint64_t base_seed, Period run_length,
                   Period warmup, const ModelOptions& model) {
  ResultRow row;
  row.instance = cell.instance;
  row.mode = cell.params.mode;
  row.sst_factor = cell.params.sst_factor;
  row.plt = cell.params.plt;
  row.policy = cell.params.policy;
  row.comp_lot = cell.params.component_lot;
  row.replication = cell.replication;
  row.seed = replication_seed(base_seed, cell.replication);
  try {
    cell.instance.validate();
    RunConfig cfg;
    cfg.system = systems.get(cell.instance.utilization);
    cfg.scenario = cell.instance.scenario();
    cfg.params = cell.params;
    cfg.seed = row.seed;
    cfg.run_length = run_length;
    cfg.warmup = warmup;
    cfg.model = model;
    const auto s = run(cfg);
    row.overall_cost = s.overall_cost;
    row.wip_cost = s.wip_cost;
    row.fgi_cost = s.fgi_cost;
    row.backorder_cost = s.backorder_cost;
    row.service_level = s.service_level;
    row.n_final_orders = s.n_final_orders;
    row.leadtime_mean = s.leadtime_mean;
    row.leadtime_sd = s.leadtime_sd;
  } catch (const std::exception& e) {
    throw std::runtime_error("cell " + std::to_string(cell.index) + " [" + row.key() + "]: " + e.what());
  }
  return row;
}

GridOutcome run_grid(const std::vector<Cell>& cells, const SystemCache& systems, std::uint64_t base_seed,
                     Period run_length, Period warmup, unsigned workers,
                     const std::function<void(std::size_t)>& progress, const ModelOptions& model) {
  std::vector<std::optional<ResultRow>> results(cells.size());
  std::vector<std::optional<std::string>> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        results[i] = run_cell(cells[i], systems, base_seed, run_length, warmup, model);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(++done);
      }
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  GridOutcome out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (results[i]) out.rows.push_back(std::move(*results[i]));
    if (errors[i]) out.failures.push_back({cells[i].index, *errors[i]});
  }
  return out;
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{
      "instance_id",    "alpha",          "beta",          "bias",           "utilization",   "mode",
      "sst_factor",     "plt",            "policy",        "policy_param",   "comp_lot",      "replication",
      "seed",           "overall_cost",   "wip_cost",      "fgi_cost",       "backorder_cost", "service_level",
      "n_final_orders", "leadtime_mean",  "leadtime_sd"};
  return cols;
}

void write_results(std::ostream& out, const std::vector<ResultRow>& rows, bool header) {
  if (header) {
    const auto& cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
  }
  for (const auto& r : rows) {
    out << r.instance.id() << ',' << format_double(r.instance.alpha) << ',' << r.instance.beta << ','
        << to_string(r.instance.bias) << ',' << to_string(r.instance.utilization) << ',' << to_string(r.mode) << ','
        << format_double(r.sst_factor) << ',' << r.plt << ',' << r.policy.kind_name() << ',' << r.policy.param << ','
        << r.comp_lot << ',' << r.replication << ',' << r.seed << ',' << format_double(r.overall_cost) << ','
        << format_double(r.wip_cost) << ',' << format_double(r.fgi_cost) << ',' << format_double(r.backorder_cost)
        << ',' << format_double(r.service_level) << ',' << r.n_final_orders << ','
        << format_double(r.leadtime_mean) << ',' << format_double(r.leadtime_sd) << '\n';
  }
}

std::vector<ResultRow> read_results(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  reader.expect_header(result_columns());
  std::vector<ResultRow> rows;
  while (auto row = reader.next()) {
    const auto& f = *row;
    ResultRow r;
    try {
      r.instance.alpha = f.get_double(1);
      r.instance.beta = f.get_int(2);
      r.instance.bias = parse_bias(f.str(3));
    } catch (const ConfigError& e) {
      f.fail(3, e.what());
    }
    try {
      r.instance.utilization = parse_utilization(f.str(4));
    } catch (const ConfigError& e) {
      f.fail(4, e.what());
    }
    try {
      r.mode = parse_mode(f.str(5));
    } catch (const ConfigError& e) {
      f.fail(5, e.what());
    }
    if (r.instance.id() != f.str(0)) f.fail(0, "does not match the instance fields (expected " + r.instance.id() + ")");
    r.sst_factor = f.get_double(6);
    r.plt = f.get_int(7);
    const int param = f.get_int(9);
    if (f.str(8) == "FOP") r.policy = LotPolicy::fop(param);
    else if (f.str(8) == "FOQ") r.policy = LotPolicy::foq(param);
    else f.fail(8, "expected FOP or FOQ");
    r.comp_lot = f.get_int64(10);
    r.replication = f.get_int(11);
    r.seed = f.get_uint64(12);
    r.overall_cost = f.get_double(13);
    r.wip_cost = f.get_double(14);
    r.fgi_cost = f.get_double(15);
    r.backorder_cost = f.get_double(16);
    r.service_level = f.get_double(17);
    r.n_final_orders = f.get_int64(18);
    r.leadtime_mean = f.get_double(19);
    r.leadtime_sd = f.get_double(20);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_results(in, path.string());
}

void write_results(const std::filesystem::path& path, const std::vector<ResultRow>& rows, bool append) {
  std::vector<ResultRow> merged;
  if (append && std::filesystem::exists(path)) merged = read_results(path);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (!index.emplace(merged[i].key(), i).second)
      throw ParseError(path.string() + ": duplicate key " + merged[i].key());
  }
  const std::size_t existing = merged.size();
  for (const auto& r : rows) {
    auto [it, inserted] = index.emplace(r.key(), merged.size());
    if (inserted) {
      merged.push_back(r);
    } else if (!(merged[it->second] == r)) {
      throw ParseError("conflicting result for key " + r.key());
    }
  }
  if (append && existing > 0) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ParseError("cannot write " + path.string());
    write_results(out, std::vector<ResultRow>(merged.begin() + static_cast<std::ptrdiff_t>(existing), merged.end()),
                  false);
  } else {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path.string());
    write_results(out, merged, true);
  }
}

namespace {

using ParamKey = std::tuple<double, int, LotPolicy, Pieces>;

ParamKey param_key(const ResultRow& r) { return {r.sst_factor, r.plt, r.policy, r.comp_lot}; }

BestCell summarize_cell(std::vector<const ResultRow*> rows) {
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->replication < b->replication; });
  BestCell b;
  const auto& first = *rows.front();
  b.instance = first.instance;
  b.mode = first.mode;
  b.params = first.params();
  const double n = static_cast<double>(rows.size());
  for (const auto* r : rows) {
    b.replications.push_back(r->replication);
    b.costs.push_back(r->overall_cost);
    b.mean_cost += r->overall_cost;
    b.mean_wip += r->wip_cost;
    b.mean_fgi += r->fgi_cost;
    b.mean_backorder += r->backorder_cost;
    b.mean_service += r->service_level;
    b.mean_orders += static_cast<double>(r->n_final_orders);
    b.mean_leadtime += r->leadtime_mean;
    b.mean_leadtime_sd += r->leadtime_sd;
  }
  for (double* v : {&b.mean_cost, &b.mean_wip, &b.mean_fgi, &b.mean_backorder, &b.mean_service, &b.mean_orders,
                    &b.mean_leadtime, &b.mean_leadtime_sd})
    *v /= n;
  return b;
}

}  // namespace

std::vector<BestCell> best_per_instance(const std::vector<ResultRow>& rows) {
  std::map<std::pair<Instance, MrpMode>, std::map<ParamKey, std::vector<const ResultRow*>>> groups;
  for (const auto& r : rows) groups[{r.instance, r.mode}][param_key(r)].push_back(&r);

  std::vector<BestCell> out;
  for (const auto& [group, sets] : groups) {
    std::set<int> all;
    for (const auto& [_, rs] : sets)
      for (const auto* r : rs) all.insert(r->replication);
    std::optional<BestCell> best;
    for (const auto& [key, rs] : sets) {
      std::set<int> reps;
      for (const auto* r : rs) {
        if (!reps.insert(r->replication).second)
          throw ParseError("duplicate replication " + std::to_string(r->replication) + " for " + r->key());
      }
      if (reps != all) {
        throw ParseError("missing replications for " + group.first.id() + " " + std::string(to_string(group.second)) +
                         " " + rs.front()->params().policy.to_string() + " sst " + format_double(std::get<0>(key)) +
                         " plt " + std::to_string(std::get<1>(key)) + ": have " + std::to_string(reps.size()) +
                         " of " + std::to_string(all.size()));
      }
      auto cand = summarize_cell(rs);
      // Parameter sets are visited in (SST, PLT, policy, comp lot) order, so a
      // strict comparison keeps the tie-break winner.
      if (!best || cand.mean_cost < best->mean_cost) best = std::move(cand);
    }
    best->candidates = sets.size();
    out.push_back(std::move(*best));
  }
  return out;
}

std::string_view stars(Significance s) {
  switch (s) {
    case Significance::None: return "";
    case Significance::Five: return "*";
    case Significance::One: return "**";
  }
  return "";
}

Comparison compare(const BestCell& standard, const BestCell& extended, bool paired) {
  Comparison c;
  c.instance = standard.instance;
  c.standard = standard;
  c.extended = extended;
  c.cost_reduction = standard.mean_cost == 0 ? 0 : (extended.mean_cost - standard.mean_cost) / standard.mean_cost;
  if (standard.costs.size() < 2 || extended.costs.size() < 2) {
    // no variance estimate from a single replication
    c.p_value = std::numeric_limits<double>::quiet_NaN();
  } else if (paired) {
    if (standard.replications != extended.replications)
      throw ParseError("paired comparison needs the same replications in both modes for " + standard.instance.id());
    c.p_value = stats::paired_t_test(standard.costs, extended.costs).p_value;
  } else {
    c.p_value = stats::welch_t_test(standard.costs, extended.costs).p_value;
  }
  c.significance = c.p_value < 0.01 ? Significance::One : c.p_value < 0.05 ? Significance::Five : Significance::None;
  return c;
}

std::vector<Comparison> analyze(const std::vector<ResultRow>& rows, bool paired) {
  std::map<Instance, std::map<MrpMode, BestCell>> by_instance;
  for (auto& b : best_per_instance(rows)) by_instance[b.instance][b.mode] = std::move(b);
  std::vector<Comparison> out;
  for (const auto& [inst, modes] : by_instance) {
    auto s = modes.find(MrpMode::Standard);
    auto e = modes.find(MrpMode::Extended);
    if (s != modes.end() && e != modes.end()) out.push_back(compare(s->second, e->second, paired));
  }
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string p_label(double p) { return std::isnan(p) ? "n/a" : fixed(p, 4); }

std::string percent(double fraction) { return fixed(100.0 * fraction, 0) + "%"; }

std::string lot_label(const PlanningParams& p) { return p.policy.to_string(); }

std::string reduction_label(const Comparison& c) {
  std::string s = percent(c.cost_reduction);
  auto st = stars(c.significance);
  if (!st.empty()) s += " " + std::string(st);
  return s;
}

void csv_field(std::ostream& out, const std::string& f) {
  if (f.find_first_of(",\"") == std::string::npos) {
    out << f;
    return;
  }
  out << '"';
  for (char ch : f) out << (ch == '"' ? "\"\"" : std::string(1, ch));
  out << '"';
}

}  // namespace

std::string Table::to_text() const {
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream out;
  out << title << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      const bool left = i < 2;
      const auto pad = std::string(width[i] - cells[i].size(), ' ');
      out << (left ? cells[i] + pad : pad + cells[i]);
    }
    out << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string Table::to_csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      csv_field(out, cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::vector<Table> render_tables(const std::vector<ResultRow>& rows, bool paired) {
  const auto best = best_per_instance(rows);
  const auto comparisons = analyze(rows, paired);

  std::vector<Table> tables;
  for (auto mode : {MrpMode::Standard, MrpMode::Extended}) {
    Table t;
    t.name = mode == MrpMode::Standard ? "optimal_standard" : "optimal_extended";
    t.title = std::string("Optimal planning parameters, unbiased forecasts, ") + std::string(to_string(mode)) + " MRP";
    t.header = {"utilization", "alpha", "sst", "plt", "lotsize", "comp_lot", "overall", "wip",
                "fgi",         "backorder", "service", "orders", "leadtime"};
    for (const auto& b : best) {
      if (b.mode != mode || b.instance.bias != BiasKind::Unbiased) continue;
      t.rows.push_back({std::string(to_string(b.instance.utilization)), format_double(b.instance.alpha),
                        format_double(b.params.sst_factor), std::to_string(b.params.plt), lot_label(b.params),
                        std::to_string(b.params.component_lot), fixed(b.mean_cost, 0), fixed(b.mean_wip, 0),
                        fixed(b.mean_fgi, 0), fixed(b.mean_backorder, 0), fixed(b.mean_service, 3),
                        fixed(b.mean_orders, 1), fixed(b.mean_leadtime, 2) + " ± " + fixed(b.mean_leadtime_sd, 2)});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t;
    t.name = "comparison_unbiased";
    t.title = "Optimal overall costs, standard vs extended MRP, unbiased forecasts";
    t.header = {"utilization", "alpha", "standard", "std_params", "extended", "ext_params", "reduction", "p_value"};
    for (const auto& c : comparisons) {
      if (c.instance.bias != BiasKind::Unbiased) continue;
      auto params = [](const BestCell& b) {
        return "SST " + format_double(b.params.sst_factor) + " PLT " + std::to_string(b.params.plt) + " " +
               lot_label(b.params);
      };
      t.rows.push_back({std::string(to_string(c.instance.utilization)), format_double(c.instance.alpha),
                        fixed(c.standard.mean_cost, 0), params(c.standard), fixed(c.extended.mean_cost, 0),
                        params(c.extended), reduction_label(c), p_label(c.p_value)});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t;
    t.name = "optimal_biased";
    t.title = "Optimal overall costs under biased forecasts (overbooking | underbooking)";
    t.header = {"utilization", "alpha",      "mode",        "temp_over",   "temp_under",
                "perm_over",   "perm_under", "svc_perm_over", "svc_perm_under"};
    std::map<std::tuple<UtilizationLevel, double, MrpMode>, std::map<BiasKind, const BestCell*>> grouped;
    for (const auto& b : best)
      if (b.instance.bias != BiasKind::Unbiased) grouped[{b.instance.utilization, b.instance.alpha, b.mode}][b.instance.bias] = &b;
    for (const auto& [key, kinds] : grouped) {
      auto cost = [&](BiasKind k) {
        auto it = kinds.find(k);
        return it == kinds.end() ? std::string("-") : fixed(it->second->mean_cost, 0);
      };
      auto svc = [&](BiasKind k) {
        auto it = kinds.find(k);
        return it == kinds.end() ? std::string("-") : fixed(it->second->mean_service, 3);
      };
      t.rows.push_back({std::string(to_string(std::get<0>(key))), format_double(std::get<1>(key)),
                        std::string(to_string(std::get<2>(key))), cost(BiasKind::TempOver), cost(BiasKind::TempUnder),
                        cost(BiasKind::PermOver), cost(BiasKind::PermUnder), svc(BiasKind::PermOver),
                        svc(BiasKind::PermUnder)});
    }
    tables.push_back(std::move(t));
  }

  {
    Table t;
    t.name = "comparison_biased";
    t.title = "Cost reduction of extended MRP under biased forecasts";
    t.header = {"utilization", "alpha", "bias", "standard", "extended", "reduction", "p_value"};
    for (const auto& c : comparisons) {
      if (c.instance.bias == BiasKind::Unbiased) continue;
      t.rows.push_back({std::string(to_string(c.instance.utilization)), format_double(c.instance.alpha),
                        std::string(to_string(c.instance.bias)), fixed(c.standard.mean_cost, 0),
                        fixed(c.extended.mean_cost, 0), reduction_label(c), p_label(c.p_value)});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::string config_hash(const SystemConstants& c) {
  std::ostringstream s;
  s << format_double(c.product_processing_time) << ';' << format_double(c.component_processing_time) << ';'
    << format_double(c.capacity) << ';';
  for (double m : c.product_setup_mean) s << format_double(m) << ';';
  s << format_double(c.component_setup_mean) << ';' << format_double(c.setup_cv) << ';' << c.bom_quantity << ';'
    << c.expected_order_amount << ';' << c.demand_interval << ';' << c.first_demand_delay << ';'
    << format_double(c.costs.wip) << ';' << format_double(c.costs.fgi) << ';' << format_double(c.costs.backorder);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string_view code_version() { return MRPSIM_VERSION; }

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << "grid: " << m.grid << '\n'
      << "base_seed: " << m.base_seed << '\n'
      << "cells: " << m.cells << '\n'
      << "failures: " << m.failures << '\n'
      << "workers: " << m.workers << '\n'
      << "config_hash: " << m.config_hash << '\n'
      << "update_timing: " << to_string(m.model.update_timing) << '\n'
      << "receipts: " << to_string(m.model.receipts) << '\n'
      << "component_timing: " << to_string(m.model.component_timing) << '\n'
      << "code_version: " << code_version() << '\n'
      << "common_random_numbers: forecast and setup-time draws depend only on (base_seed, replication, "
         "product/due date, machine); all parameter sets and modes of a replication share them\n"
      << "significance: Welch two-sample t-test on replication costs (paired variant via --paired)\n";
}

}  // namespace mrpsim
