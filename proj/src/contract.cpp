#include "agc/contract.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "agc/errors.hpp"

namespace agc {

namespace {

const Port* find_port(const std::vector<Port>& ports, const std::string& name) {
  for (const auto& p : ports) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

[[noreturn]] void invalid(const Contract& c, const std::string& what) {
  throw GraphError(GraphErrorKind::InvalidContract, "component " + c.component + ": " + what);
}

}  // namespace

const Port* Contract::find_input(const std::string& name) const { return find_port(inputs, name); }
const Port* Contract::find_output(const std::string& name) const { return find_port(outputs, name); }

bool Contract::is_pass_through(const std::string& name) const {
  return find_input(name) && find_output(name);
}

std::vector<Port> Contract::own_outputs() const {
  std::vector<Port> out;
  for (const auto& p : outputs) {
    if (!find_input(p.name)) out.push_back(p);
  }
  return out;
}

TypeEnv Contract::input_env() const {
  TypeEnv env;
  for (const auto& p : inputs) env.emplace(p.name, p.type);
  return env;
}

TypeEnv Contract::full_env() const {
  TypeEnv env = input_env();
  for (const auto& p : outputs) env.emplace(p.name, p.type);
  return env;
}

void validate_contract(const Contract& c) {
  if (c.component.empty()) throw GraphError(GraphErrorKind::InvalidContract, "unnamed component");
  for (const auto* ports : {&c.inputs, &c.outputs}) {
    std::set<std::string> seen;
    for (const auto& p : *ports) {
      if (!seen.insert(p.name).second) invalid(c, "duplicate port `" + p.name + "`");
    }
  }
  for (const auto& p : c.outputs) {
    if (const Port* in = c.find_input(p.name); in && in->type != p.type) {
      invalid(c, "pass-through port `" + p.name + "` has type " + in->type.str() +
                     " as input but " + p.type.str() + " as output");
    }
  }
  for (const auto& v : free_vars(c.assumption)) {
    if (!c.find_input(v)) {
      invalid(c, "assumption refers to `" + v + "`, which is not an input port");
    }
  }
  typecheck_formula(c.assumption, c.input_env());
  typecheck_formula(c.guarantee, c.full_env());
}

bool alpha_equal(const Contract& a, const Contract& b) {
  auto same_ports = [](const std::vector<Port>& x, const std::vector<Port>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const Port& p, const Port& q) {
      return p.name == q.name && p.type == q.type && p.direction == q.direction;
    });
  };
  return a.component == b.component && a.input_vector == b.input_vector &&
         a.output_vector == b.output_vector && same_ports(a.inputs, b.inputs) &&
         same_ports(a.outputs, b.outputs) && alpha_equal(a.assumption, b.assumption) &&
         alpha_equal(a.guarantee, b.guarantee);
}

const char* link_kind_name(LinkKind kind) {
  return kind == LinkKind::Equal ? "equal" : "subset";
}

const Contract* SystemGraph::find(const std::string& component) const {
  for (const auto& c : components) {
    if (c.component == component) return &c;
  }
  return nullptr;
}

std::vector<const Link*> SystemGraph::links_into(const std::string& component) const {
  std::vector<const Link*> out;
  for (const auto& l : links) {
    if (l.to_component == component) out.push_back(&l);
  }
  return out;
}

std::vector<const Link*> SystemGraph::links_from(const std::string& component) const {
  std::vector<const Link*> out;
  for (const auto& l : links) {
    if (l.from_component == component) out.push_back(&l);
  }
  return out;
}

bool SystemGraph::is_source(const std::string& component) const {
  return links_into(component).empty();
}

namespace {

const Contract& find_or_throw(const std::vector<Contract>& components, const std::string& name) {
  for (const auto& c : components) {
    if (c.component == name) return c;
  }
  throw GraphError(GraphErrorKind::UnknownComponent, "unknown component `" + name + "`");
}

std::vector<std::string> select(const Contract& c, const std::string& selector, Direction dir) {
  const bool input = dir == Direction::Input;
  const auto& ports = input ? c.inputs : c.outputs;
  if (selector == (input ? c.input_vector : c.output_vector)) {
    std::vector<std::string> names;
    for (const auto& p : ports) names.push_back(p.name);
    return names;
  }
  if (find_port(ports, selector)) return {selector};
  throw GraphError(GraphErrorKind::UnknownPort,
                   "component " + c.component + " has no " + (input ? "input" : "output") +
                       " port or vector named `" + selector + "`");
}

}  // namespace

Link resolve_link(const std::vector<Contract>& components, const std::string& from_component,
                  const std::string& from_selector, const std::string& to_component,
                  const std::string& to_selector, LinkKind kind) {
  const Contract& from = find_or_throw(components, from_component);
  const Contract& to = find_or_throw(components, to_component);
  auto outs = select(from, from_selector, Direction::Output);
  auto ins = select(to, to_selector, Direction::Input);
  if (outs.size() != ins.size()) {
    throw GraphError(GraphErrorKind::PortTypeMismatch,
                     "link " + from_component + "." + from_selector + " -> " + to_component + "." +
                         to_selector + " joins " + std::to_string(outs.size()) + " outputs to " +
                         std::to_string(ins.size()) + " inputs");
  }
  Link link;
  link.from_component = from_component;
  link.to_component = to_component;
  link.from_selector = from_selector;
  link.to_selector = to_selector;
  link.kind = kind;
  for (std::size_t i = 0; i < outs.size(); ++i) link.ports.push_back({outs[i], ins[i]});
  return link;
}

namespace {

std::string describe(const Link& l, const PortPair& p) {
  return l.from_component + "." + p.from_port + " -> " + l.to_component + "." + p.to_port;
}

void check_cycles(const SystemGraph& g) {
  // Colouring DFS over components.
  std::map<std::string, int> colour;  // 0 white, 1 grey, 2 black
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& c) {
    colour[c] = 1;
    path.push_back(c);
    for (const Link* l : g.links_from(c)) {
      int col = colour[l->to_component];
      if (col == 1) {
        auto start = std::find(path.begin(), path.end(), l->to_component);
        std::string cycle;
        for (auto it = start; it != path.end(); ++it) cycle += *it + " -> ";
        throw GraphError(GraphErrorKind::CycleDetected,
                         "dataflow cycle: " + cycle + l->to_component);
      }
      if (col == 0) visit(l->to_component);
    }
    path.pop_back();
    colour[c] = 2;
  };
  for (const auto& c : g.components) {
    if (colour[c.component] == 0) visit(c.component);
  }
}

}  // namespace

void validate_graph(const SystemGraph& g) {
  std::set<std::string> names;
  for (const auto& c : g.components) {
    if (!names.insert(c.component).second) {
      throw GraphError(GraphErrorKind::DuplicateComponent,
                       "component `" + c.component + "` declared twice");
    }
    validate_contract(c);
  }
  for (const auto& l : g.links) {
    const Contract& from = find_or_throw(g.components, l.from_component);
    const Contract& to = find_or_throw(g.components, l.to_component);
    for (const auto& p : l.ports) {
      const Port* out = from.find_output(p.from_port);
      const Port* in = to.find_input(p.to_port);
      if (!out || !in) {
        throw GraphError(GraphErrorKind::UnknownPort, "link " + describe(l, p) +
                                                          " names a port that does not exist");
      }
      bool ok = l.kind == LinkKind::Equal
                    ? out->type == in->type
                    : out->type.is_set() && in->type.is_set() && out->type == in->type;
      if (!ok) {
        throw GraphError(GraphErrorKind::PortTypeMismatch,
                         std::string(link_kind_name(l.kind)) + " link " + describe(l, p) +
                             " joins " + out->type.str() + " to " + in->type.str());
      }
    }
  }
  if (g.focus && !g.find(*g.focus)) {
    throw GraphError(GraphErrorKind::UnknownComponent, "focus names unknown component `" +
                                                           *g.focus + "`");
  }
  check_cycles(g);
  for (const auto& c : g.components) {
    if (g.is_source(c.component)) continue;
    std::map<std::string, int> covered;
    for (const Link* l : g.links_into(c.component)) {
      for (const auto& p : l->ports) {
        if (++covered[p.to_port] > 1) {
          throw GraphError(GraphErrorKind::DuplicateLink,
                           "input " + c.component + "." + p.to_port + " is linked more than once");
        }
      }
    }
    for (const auto& p : c.inputs) {
      if (!covered.count(p.name)) {
        throw GraphError(GraphErrorKind::UnlinkedInput,
                         "input " + c.component + "." + p.name + " is not linked");
      }
    }
  }
}

std::vector<std::size_t> topological_order(const SystemGraph& g) {
  const std::size_t n = g.components.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[g.components[i].component] = i;
  std::vector<std::set<std::size_t>> preds(n);
  for (const auto& l : g.links) {
    preds[index.at(l.to_component)].insert(index.at(l.from_component));
  }
  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      bool ready = std::all_of(preds[i].begin(), preds[i].end(),
                               [&](std::size_t p) { return done[p]; });
      if (ready) {
        done[i] = true;
        order.push_back(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      throw GraphError(GraphErrorKind::CycleDetected, "dataflow graph is cyclic");
    }
  }
  return order;
}

}  // namespace agc
