#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "agc/contract.hpp"
#include "agc/errors.hpp"
#include "agc/eval.hpp"

namespace agc {

enum class Phase { InputChecked, OutputChecked };
enum class MonitorVerdict { Pass, Violation };
enum class Policy { HaltOnViolation, LogAndContinue };

const char* phase_name(Phase p);
const char* monitor_verdict_name(MonitorVerdict v);
const char* policy_name(Policy p);

struct MonitorEvent {
  std::uint64_t seq = 0;
  std::chrono::microseconds timestamp{0};
  std::string component;
  Phase phase = Phase::InputChecked;
  MonitorVerdict verdict = MonitorVerdict::Pass;
  std::string formula_id;
  Bindings bindings;
};

// One line, fields in a fixed order.
std::string format_event(const MonitorEvent& e);

/// Line sink shared by concurrent runs; every line is flushed as written.
class EventSink {
 public:
  explicit EventSink(std::ostream& out) : out_(out) {}
  void write(const MonitorEvent& e);

 private:
  std::mutex mutex_;
  std::ostream& out_;
};

/// Append-only event record of one run.
class EventLog {
 public:
  explicit EventLog(EventSink* sink = nullptr);

  const MonitorEvent& append(std::string component, Phase phase, MonitorVerdict verdict,
                             std::string formula_id, Bindings bindings);
  const std::vector<MonitorEvent>& events() const { return events_; }

 private:
  EventSink* sink_;
  std::chrono::steady_clock::time_point start_;
  std::vector<MonitorEvent> events_;
};

class BodyFailure : public Error {
 public:
  BodyFailure(std::string component, const std::string& message)
      : Error("component " + component + " failed: " + message), component_(std::move(component)) {}
  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

/// Maps a component's inputs to its outputs. Pass-through ports may be
/// omitted; the monitor forwards them.
using Body = std::function<Bindings(const Bindings& inputs)>;

struct MonitorOptions {
  Policy policy = Policy::LogAndContinue;
  Interp interp;
  // Wall-clock limit per body run; none by default.
  std::optional<std::chrono::milliseconds> timeout;
};

struct ComponentRun {
  bool input_ok = true;
  bool output_ok = true;
  bool body_ran = false;
  // Inputs and outputs of the run, pass-through ports included.
  Bindings env;
  Bindings outputs;
  bool halted() const { return !input_ok || !output_ok; }
};

class MonitoredComponent {
 public:
  MonitoredComponent(Contract contract, Body body, MonitorOptions options);

  const Contract& contract() const { return contract_; }
  const MonitorOptions& options() const { return options_; }

  // Checks the assumption (conjoined with `link_premise`, evaluated over
  // `inputs` plus `link_values`), runs the body, then checks the guarantee.
  // Throws BodyFailure when the body throws, times out or binds the wrong ports.
  ComponentRun run(const Bindings& inputs, EventLog& log,
                   const Formula& link_premise = Formula::truth(),
                   const Bindings& link_values = {}) const;

 private:
  Bindings call_body(const Bindings& inputs) const;

  Contract contract_;
  Body body_;
  MonitorOptions options_;
  CompiledFormula assumption_;
  CompiledFormula guarantee_;
};

MonitoredComponent wrap(Contract contract, Body body, MonitorOptions options = {});

struct HaltInfo {
  std::string component;
  Phase phase = Phase::InputChecked;
  std::string formula_id;
};

struct PipelineResult {
  std::optional<HaltInfo> halted;
  // Inputs and outputs of the last component run (the focus sink when set).
  Bindings final_env;
  std::map<std::string, Bindings> component_envs;
  std::vector<MonitorEvent> events;

  bool clean() const;
};

/// Runs every component in dataflow order. Equal links copy values; for a
/// subset link the downstream receives the full upstream value and
/// `to subset from` joins its assumption check.
PipelineResult run_pipeline(const SystemGraph& g, const std::map<std::string, Body>& bodies,
                            const Bindings& input, const MonitorOptions& options = {},
                            EventSink* sink = nullptr);

}  // namespace agc
