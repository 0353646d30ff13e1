#include <sstream>

#include "agc/dsl.hpp"

namespace agc {

namespace {

void print_ports(std::ostringstream& out, const char* keyword, const std::string& vector,
                 const std::vector<Port>& ports) {
  out << "  " << keyword << " ";
  if (vector != keyword) out << vector << " ";
  out << "(";
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i) out << ", ";
    out << ports[i].name << " : " << ports[i].type.str();
  }
  out << ");\n";
}

// Top-level conjunctions go one conjunct per line.
void print_clause(std::ostringstream& out, const char* keyword, const Formula& f) {
  out << "  " << keyword << " ";
  if (f.kind() != Formula::Kind::And) {
    out << to_string(f) << ";\n";
    return;
  }
  const auto& ops = f.operands();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out << "\n    and ";
    std::string s = to_string(ops[i]);
    bool wrap = ops[i].kind() == Formula::Kind::And || ops[i].kind() == Formula::Kind::Or ||
                ops[i].kind() == Formula::Kind::Implies || ops[i].is_quantifier();
    out << (wrap ? "(" + s + ")" : s);
  }
  out << ";\n";
}

}  // namespace

std::string print_contract(const Contract& c) {
  std::ostringstream out;
  out << "component " << c.component << " {\n";
  print_ports(out, "in", c.input_vector, c.inputs);
  print_ports(out, "out", c.output_vector, c.outputs);
  print_clause(out, "assume", c.assumption);
  print_clause(out, "guarantee", c.guarantee);
  out << "}\n";
  return out.str();
}

std::string print_contracts(const std::vector<Contract>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += "\n";
    out += print_contract(cs[i]);
  }
  return out;
}

std::string print_system(const SystemGraph& g) {
  std::ostringstream out;
  for (const auto& l : g.links) {
    out << "link " << l.from_component << "." << l.from_selector << " -> " << l.to_component
        << "." << l.to_selector << " " << link_kind_name(l.kind) << ";\n";
  }
  if (g.focus) out << "focus " << *g.focus << ";\n";
  return out.str();
}

}  // namespace agc
