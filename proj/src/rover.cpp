#include "agc/rover.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "agc/dsl.hpp"

namespace agc {

const char* fault_kind_name(FaultKind k) {
  switch (k) {
    case FaultKind::PhantomObstacle: return "PhantomObstacle";
    case FaultKind::DropPlanConnectivity: return "DropPlanConnectivity";
    case FaultKind::PickNonMinimal: return "PickNonMinimal";
    case FaultKind::CorruptStart: return "CorruptStart";
  }
  return "?";
}

const char* fault_target(FaultKind k) {
  switch (k) {
    case FaultKind::PhantomObstacle:
    case FaultKind::CorruptStart: return "Detection";
    case FaultKind::DropPlanConnectivity: return "Planner";
    case FaultKind::PickNonMinimal: return "Agent";
  }
  return "?";
}

namespace {

bool needs_cell(FaultKind k) {
  return k == FaultKind::PhantomObstacle || k == FaultKind::CorruptStart;
}

std::string coord_str(Coord c) { return Value::coord(c).str(); }

bool in_grid(Coord c, Nat n) { return c.x < n && c.y < n; }

}  // namespace

void validate_world(const WorldState& w) {
  if (w.n == 0) throw WorldError("grid size n must be at least 1");
  for (const auto& c : w.obstacles) {
    if (!in_grid(c, w.n)) throw WorldError("obstacle " + coord_str(c) + " lies outside the grid");
  }
  auto blocked = [&](Coord c) {
    return std::find(w.obstacles.begin(), w.obstacles.end(), c) != w.obstacles.end();
  };
  if (!in_grid(w.start, w.n)) throw WorldError("start " + coord_str(w.start) + " lies outside the grid");
  if (blocked(w.start)) throw WorldError("start " + coord_str(w.start) + " is an obstacle");
  if (w.goal) {
    if (!in_grid(*w.goal, w.n)) throw WorldError("goal " + coord_str(*w.goal) + " lies outside the grid");
    if (blocked(*w.goal)) throw WorldError("goal " + coord_str(*w.goal) + " is an obstacle");
  }
  for (const auto& f : w.faults) {
    if (f.target != fault_target(f.kind)) {
      throw WorldError(std::string(fault_kind_name(f.kind)) + " applies to " +
                       fault_target(f.kind) + ", not " + f.target);
    }
    if (needs_cell(f.kind) != f.cell.has_value()) {
      throw WorldError(std::string(fault_kind_name(f.kind)) +
                       (needs_cell(f.kind) ? " needs a cell" : " takes no cell"));
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<Nat> parse_nat(std::string_view s) {
  Nat v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<Coord> parse_coord(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return std::nullopt;
  auto x = parse_nat(std::string_view(s).substr(0, comma));
  auto y = parse_nat(std::string_view(s).substr(comma + 1));
  if (!x || !y) return std::nullopt;
  return Coord{*x, *y};
}

std::optional<FaultKind> parse_fault_kind(const std::string& s) {
  for (auto k : {FaultKind::PhantomObstacle, FaultKind::DropPlanConnectivity,
                 FaultKind::PickNonMinimal, FaultKind::CorruptStart}) {
    if (s == fault_kind_name(k)) return k;
  }
  return std::nullopt;
}

}  // namespace

WorldState parse_world(const std::string& text, const std::string& file) {
  WorldState w;
  bool have_n = false, have_start = false;
  std::istringstream in(text);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    auto fail = [&](const std::string& msg) {
      return WorldError(file + ":" + std::to_string(line) + ": " + msg);
    };
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw fail("expected `key = value`");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    auto coord = [&](const std::string& v) {
      auto c = parse_coord(v);
      if (!c) throw fail("expected a cell `x,y`, got `" + v + "`");
      return *c;
    };
    if (key == "n") {
      auto n = parse_nat(value);
      if (!n) throw fail("expected a natural number for n");
      w.n = *n;
      have_n = true;
    } else if (key == "obstacles") {
      for (const auto& c : words(value)) w.obstacles.push_back(coord(c));
    } else if (key == "start") {
      w.start = coord(value);
      have_start = true;
    } else if (key == "goal") {
      w.goal = coord(value);
    } else if (key == "fault") {
      auto parts = words(value);
      if (parts.size() < 2 || parts.size() > 3) throw fail("expected `fault = Component Kind [x,y]`");
      auto kind = parse_fault_kind(parts[1]);
      if (!kind) throw fail("unknown fault kind `" + parts[1] + "`");
      FaultSpec f{parts[0], *kind, std::nullopt};
      if (parts.size() == 3) f.cell = coord(parts[2]);
      w.faults.push_back(f);
    } else {
      throw fail("unknown key `" + key + "`");
    }
  }
  if (!have_n) throw WorldError(file + ": missing `n`");
  if (!have_start) throw WorldError(file + ": missing `start`");
  try {
    validate_world(w);
  } catch (const WorldError& e) {
    throw WorldError(file + ": " + e.what());
  }
  return w;
}

WorldState load_world(const std::string& path) { return parse_world(read_text_file(path), path); }

Value coord_set(const std::vector<Coord>& cells) {
  Value::Elements out;
  for (const auto& c : cells) out.push_back(Value::coord(c));
  return Value::set(std::move(out));
}

Value grid_cells(Nat n) {
  Value::Elements out;
  for (Nat x = 0; x < n; ++x) {
    for (Nat y = 0; y < n; ++y) out.push_back(Value::coord(x, y));
  }
  return Value::sorted_set(std::move(out));
}

Interp world_interp(const WorldState& w) { return Interp::with_obstacles(coord_set(w.obstacles)); }

Bindings detection_body(const WorldState& w, Nat n) {
  std::vector<Coord> obstacles = w.obstacles;
  Coord s0 = w.start;
  for (const auto& f : w.faults) {
    if (f.kind == FaultKind::PhantomObstacle) obstacles.push_back(*f.cell);
    if (f.kind == FaultKind::CorruptStart) s0 = *f.cell;
  }
  return {{"Grid", grid_cells(n)}, {"Obstacles", coord_set(obstacles)}, {"s0", Value::coord(s0)}};
}

namespace {

class PathSearch {
 public:
  PathSearch(const Value& grid, const Value& obstacles, std::uint64_t cap) : cap_(cap) {
    const Value free = set_difference(grid, obstacles);
    for (const auto& c : free.elements()) {
      if (c.kind() != Value::Kind::Coord) continue;
      index_[c.as_coord()] = static_cast<int>(cells_.size());
      cells_.push_back(c.as_coord());
    }
    neighbours_.resize(cells_.size());
    const Interp four;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      for (std::size_t j = 0; j < cells_.size(); ++j) {
        if (four.adjacent(cells_[i], cells_[j])) neighbours_[i].push_back(static_cast<int>(j));
      }
    }
    visited_.assign(cells_.size(), false);
  }

  Value run(Coord s0, std::optional<Coord> goal) {
    auto s = index_.find(s0);
    if (s == index_.end()) return Value::empty_set();
    if (goal) {
      auto g = index_.find(*goal);
      if (g == index_.end() || *goal == s0) return Value::empty_set();
      goal_ = g->second;
    }
    visited_[s->second] = true;
    path_.push_back(s->second);
    dfs(s->second);

    Value::Elements plans;
    for (const auto& cells : found_) {
      Value::Elements p;
      for (int i : cells) p.push_back(Value::coord(cells_[i]));
      plans.push_back(Value::sorted_set(std::move(p)));
    }
    return Value::set(std::move(plans));
  }

 private:
  void dfs(int cur) {
    for (int nb : neighbours_[cur]) {
      if (visited_[nb]) continue;
      if (++expansions_ > cap_) throw EnumerationCapExceeded(cap_);
      visited_[nb] = true;
      path_.push_back(nb);
      if (goal_ < 0) {
        record();
        dfs(nb);
      } else if (nb == goal_) {
        record();
      } else {
        dfs(nb);
      }
      path_.pop_back();
      visited_[nb] = false;
    }
  }

  void record() {
    std::vector<int> cells = path_;
    std::sort(cells.begin(), cells.end());
    found_.insert(std::move(cells));
  }

  std::uint64_t cap_;
  std::uint64_t expansions_ = 0;
  std::vector<Coord> cells_;
  std::map<Coord, int> index_;
  std::vector<std::vector<int>> neighbours_;
  std::vector<bool> visited_;
  std::vector<int> path_;
  int goal_ = -1;
  std::set<std::vector<int>> found_;
};

}  // namespace

Value planner_body(const Value& grid, const Value& obstacles, Coord s0, std::optional<Coord> goal,
                   const PlannerOptions& options) {
  return PathSearch(grid, obstacles, options.cap).run(s0, goal);
}

Value agent_body(const Value& plan_set) {
  if (plan_set.size() == 0) throw EmptyPlanSet();
  const Value* best = &plan_set.elements().front();
  for (const auto& p : plan_set.elements()) {
    if (p.size() < best->size() || (p.size() == best->size() && p < *best)) best = &p;
  }
  return *best;
}

std::optional<Nat> bfs_oracle(const Value& grid, const Value& obstacles, Coord s0, Coord goal) {
  auto open = [&](Coord c) {
    const Value v = Value::coord(c);
    return grid.contains(v) && !obstacles.contains(v);
  };
  if (!open(s0) || !open(goal)) return std::nullopt;
  std::map<Coord, Nat> dist{{s0, 1}};
  std::deque<Coord> queue{s0};
  while (!queue.empty()) {
    const Coord c = queue.front();
    queue.pop_front();
    if (c == goal) return dist[c];
    const Coord next[] = {{c.x + 1, c.y}, {c.x, c.y + 1}, {c.x - 1, c.y}, {c.x, c.y - 1}};
    for (std::size_t i = 0; i < 4; ++i) {
      if ((i == 2 && c.x == 0) || (i == 3 && c.y == 0)) continue;
      if (!open(next[i]) || dist.count(next[i])) continue;
      dist[next[i]] = dist[c] + 1;
      queue.push_back(next[i]);
    }
  }
  return std::nullopt;
}

namespace {

bool has_fault(const WorldState& w, FaultKind k) {
  return std::any_of(w.faults.begin(), w.faults.end(),
                     [&](const FaultSpec& f) { return f.kind == k; });
}

Value drop_start_neighbours(const Value& plan_set, Coord s0) {
  const Interp four;
  Value::Elements plans;
  for (const auto& p : plan_set.elements()) {
    Value::Elements kept;
    for (const auto& c : p.elements()) {
      if (!four.adjacent(c.as_coord(), s0)) kept.push_back(c);
    }
    plans.push_back(Value::sorted_set(std::move(kept)));
  }
  return Value::set(std::move(plans));
}

Value pick_non_minimal(const Value& plan_set, const Value& grid) {
  const Value min = agent_body(plan_set);
  const Value* best = nullptr;
  for (const auto& p : plan_set.elements()) {
    if (p.size() <= min.size()) continue;
    if (!best || p.size() < best->size() || (p.size() == best->size() && p < *best)) best = &p;
  }
  if (best) return *best;
  Value::Elements cells = min.elements();
  for (const auto& c : grid.elements()) {
    if (!min.contains(c)) {
      cells.push_back(c);
      break;
    }
  }
  return Value::set(std::move(cells));
}

}  // namespace

std::map<std::string, Body> rover_bodies(const WorldState& w, bool goal_mode,
                                         const PlannerOptions& options) {
  std::map<std::string, Body> bodies;
  bodies["Detection"] = [w](const Bindings& in) { return detection_body(w, in.at("n").as_nat()); };
  const bool drop = has_fault(w, FaultKind::DropPlanConnectivity);
  bodies["Planner"] = [goal_mode, options, drop](const Bindings& in) {
    std::optional<Coord> goal;
    if (goal_mode) goal = in.at("goal").as_coord();
    const Coord s0 = in.at("s0").as_coord();
    Value plans = planner_body(in.at("Grid"), in.at("Obstacles"), s0, goal, options);
    if (drop) plans = drop_start_neighbours(plans, s0);
    return Bindings{{"PlanSet", plans}};
  };
  const bool non_minimal = has_fault(w, FaultKind::PickNonMinimal);
  bodies["Agent"] = [non_minimal](const Bindings& in) {
    const Value& plans = in.at("PlanSet");
    if (plans.size() == 0) return Bindings{{"plan", Value::empty_set()}};
    return Bindings{{"plan", non_minimal ? pick_non_minimal(plans, in.at("Grid"))
                                         : agent_body(plans)}};
  };
  return bodies;
}

Bindings rover_input(const WorldState& w, bool goal_mode) {
  Bindings b{{"n", Value::nat(w.n)}};
  if (goal_mode) {
    if (!w.goal) throw WorldError("goal mode needs a world with a goal");
    b["goal"] = Value::coord(*w.goal);
  }
  return b;
}

}  // namespace agc
