#pragma once

#include <optional>
#include <string>
#include <vector>

#include "agc/formula.hpp"
#include "agc/sem_type.hpp"
#include "agc/typecheck.hpp"

namespace agc {

enum class Direction { Input, Output };

struct Port {
  std::string name;
  SemType type;
  Direction direction;
};

/// Assume-guarantee contract of one component.
///
/// A port name declared in both the input and the output vector is a
/// pass-through: it denotes one variable whose value the component forwards
/// unchanged. Pass-through ports must have the same type in both vectors.
struct Contract {
  std::string component;
  std::string input_vector = "in";
  std::string output_vector = "out";
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  Formula assumption = Formula::truth();
  Formula guarantee = Formula::truth();

  const Port* find_input(const std::string& name) const;
  const Port* find_output(const std::string& name) const;
  bool is_pass_through(const std::string& name) const;
  // Outputs the component computes itself (outputs that are not pass-through).
  std::vector<Port> own_outputs() const;

  TypeEnv input_env() const;
  // Inputs and outputs; the guarantee's environment.
  TypeEnv full_env() const;

  std::string assumption_id() const { return "A_" + component; }
  std::string guarantee_id() const { return "G_" + component; }
};

/// Throws GraphError(InvalidContract) or TypeError when a contract invariant fails.
void validate_contract(const Contract& c);

/// Same component, vectors and ports, formulas equal up to bound names.
bool alpha_equal(const Contract& a, const Contract& b);

enum class LinkKind { Equal, SubsetOf };

const char* link_kind_name(LinkKind kind);

struct PortPair {
  std::string from_port;
  std::string to_port;
  friend bool operator==(const PortPair&, const PortPair&) = default;
};

/// Wiring from outputs of one component to inputs of another. A link may
/// carry a whole port vector (`Detection.oD -> Planner.iP`) or one port.
struct Link {
  std::string id;
  std::string from_component;
  std::string to_component;
  // Selectors as written, for printing.
  std::string from_selector;
  std::string to_selector;
  std::vector<PortPair> ports;
  LinkKind kind = LinkKind::Equal;
};

struct SystemGraph {
  std::vector<Contract> components;
  std::vector<Link> links;
  // Sink the derived contract targets when the graph has several sinks.
  std::optional<std::string> focus;

  const Contract* find(const std::string& component) const;
  std::vector<const Link*> links_into(const std::string& component) const;
  std::vector<const Link*> links_from(const std::string& component) const;
  bool is_source(const std::string& component) const;
};

/// Resolves `component.selector` on both ends into port pairs. A selector is
/// either the component's vector name (all ports, paired positionally) or a
/// single port name. Throws GraphError(UnknownComponent | UnknownPort |
/// PortTypeMismatch on arity).
Link resolve_link(const std::vector<Contract>& components, const std::string& from_component,
                  const std::string& from_selector, const std::string& to_component,
                  const std::string& to_selector, LinkKind kind);

/// Checks every SystemGraph invariant. Throws GraphError (or TypeError from
/// an ill-typed contract).
void validate_graph(const SystemGraph& g);

/// Component indices in dataflow order; ties broken by declaration order.
std::vector<std::size_t> topological_order(const SystemGraph& g);

}  // namespace agc
