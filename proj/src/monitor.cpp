#include "agc/monitor.hpp"

#include <future>
#include <memory>
#include <sstream>
#include <thread>

namespace agc {

const char* phase_name(Phase p) {
  return p == Phase::InputChecked ? "InputChecked" : "OutputChecked";
}

const char* monitor_verdict_name(MonitorVerdict v) {
  return v == MonitorVerdict::Pass ? "Pass" : "Violation";
}

const char* policy_name(Policy p) {
  return p == Policy::HaltOnViolation ? "HaltOnViolation" : "LogAndContinue";
}

std::string format_event(const MonitorEvent& e) {
  std::ostringstream out;
  out << "seq=" << e.seq << " t=" << e.timestamp.count() << "us component=" << e.component
      << " phase=" << phase_name(e.phase) << " verdict=" << monitor_verdict_name(e.verdict)
      << " formula=" << e.formula_id << " bindings=" << format_bindings(e.bindings);
  return out.str();
}

void EventSink::write(const MonitorEvent& e) {
  std::string line = format_event(e);
  std::lock_guard lock(mutex_);
  out_ << line << '\n';
  out_.flush();
}

EventLog::EventLog(EventSink* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}

const MonitorEvent& EventLog::append(std::string component, Phase phase, MonitorVerdict verdict,
                                     std::string formula_id, Bindings bindings) {
  MonitorEvent e;
  e.seq = events_.size() + 1;
  e.timestamp = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start_);
  e.component = std::move(component);
  e.phase = phase;
  e.verdict = verdict;
  e.formula_id = std::move(formula_id);
  e.bindings = std::move(bindings);
  events_.push_back(std::move(e));
  if (sink_) sink_->write(events_.back());
  return events_.back();
}

namespace {

std::vector<std::string> port_names(const std::vector<Port>& ports) {
  std::vector<std::string> out;
  for (const auto& p : ports) out.push_back(p.name);
  return out;
}

std::vector<std::string> full_names(const Contract& c) {
  auto out = port_names(c.inputs);
  for (const auto& p : c.own_outputs()) out.push_back(p.name);
  return out;
}

std::vector<Value> values_for(const std::vector<std::string>& names, const Bindings& b,
                              const std::string& component) {
  std::vector<Value> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto it = b.find(n);
    if (it == b.end()) throw BodyFailure(component, "port `" + n + "` is unbound");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

MonitoredComponent::MonitoredComponent(Contract contract, Body body, MonitorOptions options)
    : contract_(std::move(contract)),
      body_(std::move(body)),
      options_(std::move(options)),
      assumption_(contract_.assumption, port_names(contract_.inputs)),
      guarantee_(contract_.guarantee, full_names(contract_)) {}

Bindings MonitoredComponent::call_body(const Bindings& inputs) const {
  if (!options_.timeout) return body_(inputs);
  auto promise = std::make_shared<std::promise<Bindings>>();
  auto future = promise->get_future();
  // Detached so a runaway body cannot block the caller past the deadline.
  std::thread([promise, body = body_, inputs]() {
    try {
      promise->set_value(body(inputs));
    } catch (...) {
      promise->set_exception(std::current_exception());
    }
  }).detach();
  if (future.wait_for(*options_.timeout) != std::future_status::ready) {
    throw BodyFailure(contract_.component,
                      "timed out after " + std::to_string(options_.timeout->count()) + " ms");
  }
  return future.get();
}

ComponentRun MonitoredComponent::run(const Bindings& inputs, EventLog& log,
                                     const Formula& link_premise,
                                     const Bindings& link_values) const {
  const auto& name = contract_.component;
  const bool halt = options_.policy == Policy::HaltOnViolation;
  ComponentRun r;
  r.env = inputs;

  const auto in_names = port_names(contract_.inputs);
  const auto in_values = values_for(in_names, inputs, name);
  r.input_ok = assumption_.eval(in_values, options_.interp);
  Bindings checked = inputs;
  if (link_premise.kind() != Formula::Kind::True) {
    checked.insert(link_values.begin(), link_values.end());
    r.input_ok = r.input_ok && eval(link_premise, Env{checked, options_.interp});
  }
  log.append(name, Phase::InputChecked, r.input_ok ? MonitorVerdict::Pass : MonitorVerdict::Violation,
             contract_.assumption_id(), std::move(checked));
  if (!r.input_ok && halt) return r;

  Bindings produced;
  try {
    produced = call_body(inputs);
  } catch (const BodyFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw BodyFailure(name, e.what());
  }
  r.body_ran = true;

  for (const auto& [port, value] : produced) {
    if (!contract_.find_output(port)) {
      throw BodyFailure(name, "body bound `" + port + "`, which is not an output");
    }
  }
  for (const auto& p : contract_.outputs) {
    auto it = produced.find(p.name);
    if (it != produced.end()) {
      r.outputs[p.name] = it->second;
    } else if (contract_.is_pass_through(p.name)) {
      r.outputs[p.name] = inputs.at(p.name);
    } else {
      throw BodyFailure(name, "body did not bind output `" + p.name + "`");
    }
  }
  for (const auto& [port, value] : r.outputs) r.env[port] = value;

  r.output_ok = guarantee_.eval(values_for(full_names(contract_), r.env, name), options_.interp);
  log.append(name, Phase::OutputChecked,
             r.output_ok ? MonitorVerdict::Pass : MonitorVerdict::Violation,
             contract_.guarantee_id(), r.env);
  return r;
}

MonitoredComponent wrap(Contract contract, Body body, MonitorOptions options) {
  return MonitoredComponent(std::move(contract), std::move(body), std::move(options));
}

bool PipelineResult::clean() const {
  if (halted) return false;
  for (const auto& e : events) {
    if (e.verdict == MonitorVerdict::Violation) return false;
  }
  return true;
}

PipelineResult run_pipeline(const SystemGraph& g, const std::map<std::string, Body>& bodies,
                            const Bindings& input, const MonitorOptions& options,
                            EventSink* sink) {
  validate_graph(g);
  EventLog log(sink);
  PipelineResult result;
  std::map<std::string, Bindings> outputs;

  const auto order = topological_order(g);
  std::string last = g.components[order.back()].component;
  if (g.focus) last = *g.focus;

  for (std::size_t index : order) {
    const Contract& c = g.components[index];
    auto body = bodies.find(c.component);
    if (body == bodies.end()) throw BodyFailure(c.component, "no body supplied");

    Bindings inputs;
    Bindings link_values;
    std::vector<Formula> premises;
    const auto incoming = g.links_into(c.component);
    if (incoming.empty()) {
      for (const auto& p : c.inputs) {
        auto it = input.find(p.name);
        if (it == input.end()) throw BodyFailure(c.component, "input `" + p.name + "` is unbound");
        inputs[p.name] = it->second;
      }
    }
    for (const Link* l : incoming) {
      const Bindings& up = outputs.at(l->from_component);
      for (const auto& pp : l->ports) {
        inputs[pp.to_port] = up.at(pp.from_port);
        if (l->kind == LinkKind::SubsetOf) {
          const std::string hidden = pp.from_port + "@" + l->from_component;
          link_values[hidden] = up.at(pp.from_port);
          premises.push_back(Formula::atom(Formula::Kind::SubsetEq, Term::var(pp.to_port),
                                           Term::var(hidden)));
        }
      }
    }

    MonitoredComponent m(c, body->second, options);
    ComponentRun r = m.run(inputs, log, Formula::conj(std::move(premises)), link_values);
    result.component_envs[c.component] = r.env;
    if (c.component == last) result.final_env = r.env;
    if (r.halted() && options.policy == Policy::HaltOnViolation) {
      result.halted = HaltInfo{c.component, r.input_ok ? Phase::OutputChecked : Phase::InputChecked,
                               r.input_ok ? c.guarantee_id() : c.assumption_id()};
      break;
    }
    outputs[c.component] = r.outputs;
  }
  result.events = log.events();
  return result;
}

}  // namespace agc
