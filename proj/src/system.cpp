#include "mrpsim/system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#ifdef MRPSIM_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace mrpsim {

Period period_of(Minutes time) {
  auto p = static_cast<Period>(std::ceil(time / kMinutesPerPeriod));
  return std::max(p, 1);
}

bool DemandPattern::is_due(ItemId product, Period p) const {
  auto it = offsets.find(product);
  if (it == offsets.end() || p <= first_demand_delay) return false;
  return ((p - it->second) % interval + interval) % interval == 0;
}

Period DemandPattern::next_due_at_or_after(ItemId product, Period p) const {
  auto it = offsets.find(product);
  if (it == offsets.end()) throw ConfigError("no demand pattern for item " + std::to_string(product.value));
  p = std::max(p, first_demand_delay + 1);
  Period shift = ((it->second - p) % interval + interval) % interval;
  return p + shift;
}

std::string_view to_string(UtilizationLevel level) {
  switch (level) {
    case UtilizationLevel::Low: return "low";
    case UtilizationLevel::Medium: return "medium";
    case UtilizationLevel::High: return "high";
  }
  return "?";
}

UtilizationLevel parse_utilization(std::string_view text) {
  if (text == "low") return UtilizationLevel::Low;
  if (text == "medium") return UtilizationLevel::Medium;
  if (text == "high") return UtilizationLevel::High;
  throw ConfigError("unknown utilization level '" + std::string(text) + "' (allowed: low, medium, high)");
}

namespace {

template <typename T>
void override_if(const nlohmann::json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

SystemConstants parse_constants(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  static const char* kKnown[] = {"product_processing_time", "component_processing_time", "capacity",
                                 "product_setup_mean",      "component_setup_mean",      "setup_cv",
                                 "bom_quantity",            "expected_order_amount",     "demand_interval",
                                 "first_demand_delay",      "costs"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw ConfigError("unknown config key '" + key + "'");
  }

  SystemConstants c;
  try {
    override_if(j, "product_processing_time", c.product_processing_time);
    override_if(j, "component_processing_time", c.component_processing_time);
    override_if(j, "capacity", c.capacity);
    override_if(j, "component_setup_mean", c.component_setup_mean);
    override_if(j, "setup_cv", c.setup_cv);
    override_if(j, "bom_quantity", c.bom_quantity);
    override_if(j, "expected_order_amount", c.expected_order_amount);
    override_if(j, "demand_interval", c.demand_interval);
    override_if(j, "first_demand_delay", c.first_demand_delay);
    if (j.contains("product_setup_mean")) {
      const auto& s = j.at("product_setup_mean");
      override_if(s, "low", c.product_setup_mean[0]);
      override_if(s, "medium", c.product_setup_mean[1]);
      override_if(s, "high", c.product_setup_mean[2]);
    }
    if (j.contains("costs")) {
      const auto& s = j.at("costs");
      override_if(s, "wip", c.costs.wip);
      override_if(s, "fgi", c.costs.fgi);
      override_if(s, "backorder", c.costs.backorder);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }

  if (c.capacity <= 0) throw ConfigError("capacity must be > 0");
  if (c.setup_cv < 0) throw ConfigError("setup_cv must be >= 0");
  if (c.bom_quantity <= 0) throw ConfigError("bom_quantity must be > 0");
  if (c.expected_order_amount <= 0) throw ConfigError("expected_order_amount must be > 0");
  if (c.demand_interval < 1) throw ConfigError("demand_interval must be >= 1");
  return c;
}

SystemConstants load_constants(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_constants(buf.str());
}

ProductionSystem::ProductionSystem(UtilizationLevel level, std::vector<Item> items, std::vector<Machine> machines,
                                   CostRates costs, DemandPattern demand)
    : level_(level), items_(std::move(items)), machines_(std::move(machines)), costs_(costs),
      demand_(std::move(demand)) {
  for (const auto& m : machines_) {
    if (m.capacity <= 0) throw ConfigError("machine " + std::to_string(m.id.value) + ": capacity must be > 0");
    if (m.setup_cv < 0) throw ConfigError("machine " + std::to_string(m.id.value) + ": setup_cv must be >= 0");
  }
  for (const auto& it : items_) {
    for (auto mid : it.routing) {
      if (!has_machine(mid))
        throw ConfigError("item " + std::to_string(it.id.value) + " routes to unknown machine " +
                          std::to_string(mid.value));
    }
    (it.is_final() ? final_products_ : components_).push_back(it.id);
  }
  for (const auto& it : items_) {
    for (const auto& line : it.bom) (void)item(line.component);
  }
}

const Item& ProductionSystem::item(ItemId id) const {
  auto it = std::find_if(items_.begin(), items_.end(), [id](const Item& i) { return i.id == id; });
  if (it == items_.end()) throw ConfigError("unknown item id " + std::to_string(id.value));
  return *it;
}

const Machine& ProductionSystem::machine(MachineId id) const {
  auto it = std::find_if(machines_.begin(), machines_.end(), [id](const Machine& m) { return m.id == id; });
  if (it == machines_.end()) throw ConfigError("unknown machine id " + std::to_string(id.value));
  return *it;
}

bool ProductionSystem::has_machine(MachineId id) const {
  return std::any_of(machines_.begin(), machines_.end(), [id](const Machine& m) { return m.id == id; });
}

ProductionSystem build_default_system(UtilizationLevel level, const SystemConstants& c) {
  const Minutes product_setup = c.product_setup_mean[static_cast<std::size_t>(level)];

  std::vector<Machine> machines;
  for (int id : {101, 102, 111, 112}) machines.push_back({MachineId{id}, c.capacity, product_setup, c.setup_cv});
  for (int id : {201, 202}) machines.push_back({MachineId{id}, c.capacity, c.component_setup_mean, c.setup_cv});

  std::vector<Item> items;
  DemandPattern demand{c.demand_interval, c.first_demand_delay, {}};
  for (int id = 10; id <= 17; ++id) {
    const bool first_family = id <= 13;
    Item p;
    p.id = ItemId{id};
    p.kind = ItemKind::FinalProduct;
    p.processing_time = c.product_processing_time;
    p.routing = first_family ? std::vector{MachineId{102}, MachineId{101}} : std::vector{MachineId{112}, MachineId{111}};
    p.bom = {BomLine{ItemId{first_family ? 20 : 21}, c.bom_quantity}};
    p.expected_order_amount = c.expected_order_amount;
    items.push_back(std::move(p));
    demand.offsets[ItemId{id}] = ((id - 10) % 4) % c.demand_interval + 1;
  }
  for (int id : {20, 21}) {
    Item comp;
    comp.id = ItemId{id};
    comp.kind = ItemKind::Component;
    comp.processing_time = c.component_processing_time;
    comp.routing = {MachineId{id == 20 ? 201 : 202}};
    items.push_back(std::move(comp));
  }
  return ProductionSystem(level, std::move(items), std::move(machines), c.costs, std::move(demand));
}

double planned_utilization(const ProductionSystem& system, MachineId machine, double lots_per_period,
                           double pieces_per_period) {
  const Machine& m = system.machine(machine);
  // All items on one machine share a processing time in this system; take it
  // from the first item routed there.
  Minutes proc = 0;
  for (const auto& item : system.items()) {
    if (std::find(item.routing.begin(), item.routing.end(), machine) != item.routing.end()) {
      proc = item.processing_time;
      break;
    }
  }
  return (pieces_per_period * proc + lots_per_period * m.setup_time_mean) / m.capacity;
}

std::vector<UtilizationRow> utilization_table(const SystemConstants& c) {
  std::vector<UtilizationRow> rows;
  const double interval = c.demand_interval;
  // Four products per product machine, one due date each per interval.
  const double product_pieces = 4.0 * static_cast<double>(c.expected_order_amount) / interval;
  const double product_lots = 4.0 / interval;
  for (auto level : kAllUtilizationLevels) {
    auto system = build_default_system(level, c);
    for (int id : {101, 102, 111, 112}) {
      MachineId m{id};
      rows.push_back({m, std::string(to_string(level)), product_lots, product_pieces,
                      planned_utilization(system, m, product_lots, product_pieces)});
    }
  }
  auto system = build_default_system(UtilizationLevel::Low, c);
  const double component_pieces = product_pieces * static_cast<double>(c.bom_quantity);
  for (Pieces q : {Pieces{800}, Pieces{1600}}) {
    for (int id : {201, 202}) {
      MachineId m{id};
      const double lots = component_pieces / static_cast<double>(q);
      rows.push_back({m, "foq" + std::to_string(q), lots, component_pieces,
                      planned_utilization(system, m, lots, component_pieces)});
    }
  }
  return rows;
}

}  // namespace mrpsim
