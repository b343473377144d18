#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrpsim/types.hpp"

namespace mrpsim {

enum class ItemKind { FinalProduct, Component };

struct BomLine {
  ItemId component;
  Pieces quantity = 0;  // per parent piece
};

struct Item {
  ItemId id;
  ItemKind kind = ItemKind::FinalProduct;
  Minutes processing_time = 0.0;  // per piece, every routing stage
  std::vector<MachineId> routing;
  std::vector<BomLine> bom;
  Pieces expected_order_amount = 0;

  bool is_final() const { return kind == ItemKind::FinalProduct; }
};

struct Machine {
  MachineId id;
  Minutes capacity = kMinutesPerPeriod;  // per period
  Minutes setup_time_mean = 0.0;         // per lot
  double setup_cv = 0.0;
};

struct CostRates {
  double wip = 0.5;        // CU per piece per period
  double fgi = 1.0;
  double backorder = 19.0;

  /// Newsvendor-style target implied by the holding/backorder ratio.
  double target_service_level() const { return 1.0 - fgi / (fgi + backorder); }
};

/// Periodic due dates: product k is due in every period p > first_demand_delay
/// with p ≡ offset(k) (mod interval), offsets taken in 1..interval.
struct DemandPattern {
  Period interval = 4;
  Period first_demand_delay = 12;
  std::map<ItemId, Period> offsets;

  bool is_due(ItemId product, Period p) const;
  /// Smallest due period >= p for the product.
  Period next_due_at_or_after(ItemId product, Period p) const;
  Period first_due(ItemId product) const { return next_due_at_or_after(product, first_demand_delay + 1); }
};

enum class UtilizationLevel { Low, Medium, High };

std::string_view to_string(UtilizationLevel level);
UtilizationLevel parse_utilization(std::string_view text);
inline constexpr std::array<UtilizationLevel, 3> kAllUtilizationLevels{
    UtilizationLevel::Low, UtilizationLevel::Medium, UtilizationLevel::High};

/// Every tunable constant of the default system. A JSON config file may
/// override any subset of these (see README for the key schema).
struct SystemConstants {
  Minutes product_processing_time = 1.35;
  Minutes component_processing_time = 0.68;
  Minutes capacity = kMinutesPerPeriod;
  std::array<Minutes, 3> product_setup_mean{216.0, 288.0, 331.2};  // low, medium, high
  Minutes component_setup_mean = 94.0;
  double setup_cv = 0.2;
  Pieces bom_quantity = 2;
  Pieces expected_order_amount = 800;
  Period demand_interval = 4;
  Period first_demand_delay = 12;
  CostRates costs;
};

SystemConstants load_constants(const std::filesystem::path& path);
SystemConstants parse_constants(std::string_view json_text);

/// Immutable production system: items, routings, machines, costs, demand
/// pattern. Safe to share between concurrent runs.
class ProductionSystem {
 public:
  ProductionSystem(UtilizationLevel level, std::vector<Item> items, std::vector<Machine> machines,
                   CostRates costs, DemandPattern demand);

  UtilizationLevel level() const { return level_; }
  const Item& item(ItemId id) const;
  const Machine& machine(MachineId id) const;
  bool has_machine(MachineId id) const;
  std::span<const Item> items() const { return items_; }
  std::span<const Machine> machines() const { return machines_; }
  const std::vector<ItemId>& final_products() const { return final_products_; }
  const std::vector<ItemId>& components() const { return components_; }
  const CostRates& costs() const { return costs_; }
  const DemandPattern& demand() const { return demand_; }

 private:
  UtilizationLevel level_;
  std::vector<Item> items_;
  std::vector<Machine> machines_;
  CostRates costs_;
  DemandPattern demand_;
  std::vector<ItemId> final_products_;
  std::vector<ItemId> components_;
};

/// Products 10–13 run M102→M101 on component 20 (M201); products 14–17 run
/// M112→M111 on component 21 (M202).
ProductionSystem build_default_system(UtilizationLevel level, const SystemConstants& constants = {});

/// (pieces × processing time + lots × mean setup) / capacity.
double planned_utilization(const ProductionSystem& system, MachineId machine, double lots_per_period,
                           double pieces_per_period);

struct UtilizationRow {
  MachineId machine;
  std::string scenario;  // "low"/"medium"/"high" or "foq800"/"foq1600"
  double lots_per_period = 0;
  double pieces_per_period = 0;
  double utilization = 0;
};

/// Planned utilization of every machine: product machines at FOP 1 for each
/// utilization level, component machines at FOQ 800 and FOQ 1600.
std::vector<UtilizationRow> utilization_table(const SystemConstants& constants = {});

}  // namespace mrpsim
