#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "agc/dsl.hpp"
#include "agc/value.hpp"

namespace agc::test {

inline std::string data(const std::string& name) { return std::string(AGC_TEST_DATA_DIR) + "/" + name; }

inline std::vector<Contract> rover_contracts(bool goal = false) {
  const auto path = data(goal ? "rover_goal.agc" : "rover.agc");
  return parse_contract_file(read_text_file(path), path);
}

inline SystemGraph rover_graph(bool goal = false) {
  const auto path = data(goal ? "rover_goal.sys" : "rover.sys");
  return parse_system_file(read_text_file(path), rover_contracts(goal), path);
}

inline Contract component(const SystemGraph& g, const std::string& name) {
  return *g.find(name);
}

inline Value cells(std::initializer_list<std::pair<Nat, Nat>> cs) {
  Value::Elements e;
  for (auto [x, y] : cs) e.push_back(Value::coord(x, y));
  return Value::set(e);
}

inline Value sets(std::initializer_list<Value> vs) { return Value::set(Value::Elements(vs)); }

}  // namespace agc::test
