#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agc/contract.hpp"
#include "agc/errors.hpp"
#include "agc/eval.hpp"
#include "agc/monitor.hpp"
#include "agc/value.hpp"

namespace agc {

class WorldError : public Error {
 public:
  using Error::Error;
};

class EmptyPlanSet : public Error {
 public:
  EmptyPlanSet() : Error("EmptyPlanSet: no plan to choose from") {}
};

class EnumerationCapExceeded : public Error {
 public:
  explicit EnumerationCapExceeded(std::uint64_t cap)
      : Error("planner exceeded its cap of " + std::to_string(cap) + " candidate plans"),
        cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

enum class FaultKind { PhantomObstacle, DropPlanConnectivity, PickNonMinimal, CorruptStart };

const char* fault_kind_name(FaultKind k);
// Component a fault kind applies to.
const char* fault_target(FaultKind k);

struct FaultSpec {
  std::string target;
  FaultKind kind = FaultKind::PhantomObstacle;
  // Cell for PhantomObstacle and CorruptStart.
  std::optional<Coord> cell;
};

struct WorldState {
  Nat n = 1;
  std::vector<Coord> obstacles;
  Coord start;
  std::optional<Coord> goal;
  std::vector<FaultSpec> faults;
};

/// Throws WorldError when the world or one of its faults is malformed.
void validate_world(const WorldState& w);

/// `key = value` lines: n, obstacles, start, goal, fault (repeatable).
/// Throws WorldError with the offending line.
WorldState parse_world(const std::string& text, const std::string& file = "<world>");
WorldState load_world(const std::string& path);

Value coord_set(const std::vector<Coord>& cells);
// All cells (x, y) with x, y < n.
Value grid_cells(Nat n);

// Obstacle oracle backed by the world's ground-truth map.
Interp world_interp(const WorldState& w);

/// Grid, Obstacles and s0 read from the world, faults applied.
Bindings detection_body(const WorldState& w, Nat n);

struct PlannerOptions {
  std::uint64_t cap = 100'000;
};

/// Cell sets of the simple 4-connected paths from s0 through free cells.
/// Without a goal every path of at least two cells counts; with a goal
/// only paths that end at the goal. Throws EnumerationCapExceeded.
Value planner_body(const Value& grid, const Value& obstacles, Coord s0,
                   std::optional<Coord> goal = std::nullopt, const PlannerOptions& options = {});

/// Minimum-cardinality member, ties broken by the least sorted cell list.
/// Throws EmptyPlanSet.
Value agent_body(const Value& plan_set);

/// Cell count of a shortest 4-connected obstacle-free path, or nullopt
/// when the goal is unreachable.
std::optional<Nat> bfs_oracle(const Value& grid, const Value& obstacles, Coord s0, Coord goal);

/// Monitored bodies for the three rover components, with the world's faults
/// injected. An empty PlanSet makes the Agent emit `plan = {}` so that its
/// guarantee reports the failure.
std::map<std::string, Body> rover_bodies(const WorldState& w, bool goal_mode,
                                         const PlannerOptions& options = {});

// Source input: n, plus goal in goal mode.
Bindings rover_input(const WorldState& w, bool goal_mode);

}  // namespace agc
