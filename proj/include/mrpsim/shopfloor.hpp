#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <string_view>
#include <vector>

#include "mrpsim/rng.hpp"
#include "mrpsim/system.hpp"
#include "mrpsim/types.hpp"

namespace mrpsim {

/// Lognormal setup time with the given mean and coefficient of variation:
/// shape^2 = ln(1 + cv^2), scale = ln(mean) - shape^2 / 2. cv == 0 returns mean.
Minutes sample_setup(Minutes mean, double cv, Rng& rng);

enum class EventKind { OrderReleased, OperationComplete, PeriodBoundary };

std::string_view to_string(EventKind kind);

struct SimEvent {
  Minutes time = 0;
  EventKind kind = EventKind::OrderReleased;
  std::uint64_t seq = 0;
  OrderId order = 0;
  MachineId machine;
};

struct MachineState {
  MachineId id;
  std::deque<OrderId> queue;
  std::optional<OrderId> current;
  Minutes busy_until = 0;
  Minutes busy_minutes = 0;         // whole run
  Minutes window_busy_minutes = 0;  // within the accounting window
};

/// One setup+processing operation on one machine.
struct OperationRecord {
  OrderId order = 0;
  MachineId machine;
  Minutes arrival = 0;
  Minutes start = 0;
  Minutes setup = 0;
  Minutes end = 0;
};

struct EventTraceRow {
  Minutes time = 0;
  std::string_view event;
  OrderId order = 0;
  int machine = 0;
};

/// Discrete-event job shop: FIFO queues, one lot in process per machine,
/// sequence-independent lognormal setup per lot, deterministic per-piece
/// processing, whole-lot transfer between routing stages.
class ShopFloor {
 public:
  /// (order, first operation start, completion time)
  using CompletionHandler = std::function<void(OrderId, Minutes, Minutes)>;

  ShopFloor(const ProductionSystem& system, std::uint64_t seed);

  /// Enqueues the lot at the first machine of the item's routing at time `at`.
  void dispatch(OrderId order, ItemId item, Pieces quantity, Minutes at);

  /// Processes every event with time <= until. `on_complete` fires when a lot
  /// leaves its last routing stage; it may dispatch further lots.
  void advance(Minutes until, const CompletionHandler& on_complete);

  Minutes now() const { return now_; }
  const MachineState& machine(MachineId id) const;
  /// Pieces of all dispatched lots that have not completed their routing.
  Pieces pieces_in_system() const { return pieces_in_system_; }
  std::size_t lots_in_system() const { return lots_.size(); }
  /// First operation start of a lot, if it has started.
  std::optional<Minutes> start_time(OrderId order) const;

  void set_accounting_window(Minutes from, Minutes to);
  void set_recording(bool on) { recording_ = on; }
  void set_trace(bool on) { tracing_ = on; }
  const std::vector<OperationRecord>& operations() const { return operations_; }
  const std::vector<EventTraceRow>& trace() const { return trace_; }
  void write_trace(std::ostream& out) const;

 private:
  struct Lot {
    ItemId item;
    Pieces quantity = 0;
    std::size_t stage = 0;
    Minutes arrival = 0;
    std::optional<Minutes> first_start;
  };
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const;
  };
  struct MachineRuntime {
    MachineState state;
    Machine spec;
    Rng rng;
  };

  void push(SimEvent e);
  void arrive(OrderId order, MachineId machine, Minutes at);
  void try_start(MachineRuntime& m, Minutes at);
  MachineRuntime& runtime(MachineId id);
  void log(Minutes t, std::string_view what, OrderId order, MachineId machine);

  ProductionSystem system_;
  std::map<MachineId, MachineRuntime> machines_;
  std::map<OrderId, Lot> lots_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> events_;
  std::uint64_t next_seq_ = 0;
  Minutes now_ = 0;
  Pieces pieces_in_system_ = 0;
  Minutes window_from_ = 0;
  Minutes window_to_ = 0;
  bool recording_ = false;
  bool tracing_ = false;
  std::vector<OperationRecord> operations_;
  std::vector<EventTraceRow> trace_;
};

}  // namespace mrpsim
