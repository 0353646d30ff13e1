#include "agc/composition.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "agc/errors.hpp"

namespace agc {

const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Discharged: return "Discharged";
    case VerdictStatus::Refuted: return "Refuted";
    case VerdictStatus::Exhausted: return "Exhausted";
  }
  return "?";
}

namespace {

std::string fresh(const std::string& base, const std::set<std::string>& taken) {
  std::string name = base + "'";
  while (taken.count(name)) name += "'";
  return name;
}

Obligation make_obligation(const SystemGraph& g, const Link& l, std::size_t index,
                           const DomainBounds& bounds) {
  const Contract& up = *g.find(l.from_component);
  const Contract& down = *g.find(l.to_component);

  std::set<std::string> taken;
  for (const auto& p : up.inputs) taken.insert(p.name);
  for (const auto& p : up.outputs) taken.insert(p.name);
  for (const auto& p : down.inputs) taken.insert(p.name);

  std::map<std::string, std::string> renaming;
  std::vector<Port> extra;
  std::vector<Formula> premise = conjuncts(up.guarantee);

  if (l.kind == LinkKind::Equal) {
    for (const auto& pp : l.ports) renaming[pp.to_port] = pp.from_port;
  }
  for (const auto& in : down.inputs) {
    if (renaming.count(in.name)) continue;
    const bool clash = up.find_input(in.name) || up.find_output(in.name);
    std::string name = (clash || l.kind == LinkKind::SubsetOf) ? fresh(in.name, taken) : in.name;
    taken.insert(name);
    renaming[in.name] = name;
    extra.push_back(Port{name, in.type, Direction::Input});
  }
  if (l.kind == LinkKind::SubsetOf) {
    for (const auto& pp : l.ports) {
      premise.push_back(Formula::atom(Formula::Kind::SubsetEq, Term::var(renaming[pp.to_port]),
                                      Term::var(pp.from_port)));
    }
  }

  Obligation o;
  o.id = "O" + std::to_string(index + 1);
  o.link = l;
  o.rule = l.kind == LinkKind::Equal ? "PR1" : "PR2";
  o.premise = Formula::conj(std::move(premise));
  o.consequent = rename_free(down.assumption, renaming);
  o.bounds = bounds;

  const auto used = free_vars(o.body());
  std::set<std::string> seen;
  auto add = [&](const Port& p) {
    if (used.count(p.name) && seen.insert(p.name).second) o.vars.push_back(p);
  };
  for (const auto& p : up.inputs) add(p);
  for (const auto& p : up.outputs) add(p);
  for (const auto& p : extra) add(p);
  return o;
}

bool syntactically_entailed(const Obligation& o) {
  const auto premises = conjuncts(o.premise);
  for (const auto& c : conjuncts(o.consequent)) {
    if (c.kind() == Formula::Kind::True) continue;
    bool found = std::any_of(premises.begin(), premises.end(),
                             [&](const Formula& p) { return alpha_equal(p, c); });
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<Obligation> generate_obligations(const SystemGraph& g, const DomainBounds& bounds) {
  validate_graph(g);
  std::vector<Obligation> out;
  for (std::size_t i = 0; i < g.links.size(); ++i) {
    out.push_back(make_obligation(g, g.links[i], i, bounds));
  }
  return out;
}

namespace {

// Depth-first search over the obligation's variables. The last variable is
// outermost, so leaves are visited in the same order as EnvEnumerator. A
// premise conjunct is checked as soon as every variable it reads is bound,
// and a false conjunct prunes the whole subtree.
class Search {
 public:
  Search(const Obligation& o, const Interp& interp) : o_(o), interp_(interp) {
    std::vector<std::string> names;
    for (const auto& p : o.vars) {
      names.push_back(p.name);
      domains_.emplace_back(p.type, o.bounds);
    }
    cache_.resize(o.vars.size());
    slots_.resize(o.vars.size());
    checks_.resize(o.vars.size() + 1);
    for (const auto& c : conjuncts(o.premise)) {
      const auto used = free_vars(c);
      std::size_t level = o.vars.size();
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (used.count(names[i])) {
          level = i;
          break;
        }
      }
      checks_[level].emplace_back(c, names);
    }
    consequent_.emplace(o.consequent, names);
  }

  VerdictStatus run(Verdict& v) {
    verdict_ = &v;
    if (!holds(o_.vars.size())) {
      covered_ = total();
    } else if (o_.vars.empty()) {
      leaf();
    } else {
      descend(o_.vars.size() - 1);
    }
    v.envs_checked = covered_;
    if (v.counterexample) return VerdictStatus::Refuted;
    return exhausted_ ? VerdictStatus::Exhausted : VerdictStatus::Discharged;
  }

 private:
  bool stop() const { return exhausted_ || verdict_->counterexample.has_value(); }

  std::uint64_t total() const {
    std::uint64_t n = 1;
    for (const auto& d : domains_) n = saturating_mul(n, d.size());
    return n;
  }

  // Environments below one assignment of variable `level`.
  std::uint64_t subtree(std::size_t level) const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < level; ++i) n = saturating_mul(n, domains_[i].size());
    return n;
  }

  const Value& value(std::size_t var, std::uint64_t index) {
    constexpr std::uint64_t kCacheLimit = 1u << 16;
    if (index >= kCacheLimit) {
      scratch_ = domains_[var].at(index);
      return scratch_;
    }
    auto& cache = cache_[var];
    if (cache.size() <= index) cache.resize(index + 1);
    if (!cache[index]) cache[index] = domains_[var].at(index);
    return *cache[index];
  }

  bool holds(std::size_t level) {
    for (const auto& c : checks_[level]) {
      if (!c.eval(slots_, interp_)) return false;
    }
    return true;
  }

  void leaf() {
    if (!consequent_->eval(slots_, interp_)) {
      Bindings b;
      for (std::size_t i = 0; i < o_.vars.size(); ++i) b.emplace(o_.vars[i].name, slots_[i]);
      verdict_->counterexample = Env{std::move(b), interp_};
    }
    covered_ = saturating_add(covered_, 1);
  }

  void descend(std::size_t level) {
    const std::uint64_t below = subtree(level);
    for (std::uint64_t i = 0; i < domains_[level].size() && !stop(); ++i) {
      if (++steps_ > o_.bounds.max_envs) {
        exhausted_ = true;
        return;
      }
      slots_[level] = value(level, i);
      if (!holds(level)) {
        covered_ = saturating_add(covered_, below);
      } else if (level == 0) {
        leaf();
      } else {
        descend(level - 1);
      }
    }
  }

  const Obligation& o_;
  const Interp& interp_;
  std::vector<Domain> domains_;
  std::vector<std::vector<std::optional<Value>>> cache_;
  Value scratch_;
  std::vector<Value> slots_;
  std::vector<std::vector<CompiledFormula>> checks_;
  std::optional<CompiledFormula> consequent_;
  Verdict* verdict_ = nullptr;
  std::uint64_t steps_ = 0;
  std::uint64_t covered_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Verdict discharge(const Obligation& o, const DischargeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  v.obligation_id = o.id;
  if (!options.exhaustive && syntactically_entailed(o)) {
    v.method = "syntactic";
    v.status = VerdictStatus::Discharged;
  } else {
    v.method = "enumeration";
    v.status = Search(o, options.interp).run(v);
  }
  v.elapsed = std::chrono::steady_clock::now() - start;
  return v;
}

DerivedContract derive_system_contract(const SystemGraph& g,
                                       const std::vector<Obligation>& obligations,
                                       const std::vector<Verdict>& verdicts) {
  validate_graph(g);
  auto unsupported = [](const std::string& msg) {
    return CompositionError(CompositionErrorKind::UnsupportedTopology, msg);
  };
  auto not_discharged = [](const std::string& id, VerdictStatus s) {
    return CompositionError(CompositionErrorKind::ObligationNotDischarged,
                            "obligation " + id + " is " + verdict_status_name(s));
  };

  for (const auto& v : verdicts) {
    if (v.status != VerdictStatus::Discharged) throw not_discharged(v.obligation_id, v.status);
  }
  if (g.components.empty()) throw unsupported("system has no components");

  std::map<std::string, std::string> upstream;
  std::vector<std::string> sources, sinks;
  for (const auto& c : g.components) {
    std::set<std::string> producers;
    for (const Link* l : g.links_into(c.component)) producers.insert(l->from_component);
    if (producers.size() > 1) {
      throw unsupported("component " + c.component + " has several upstream producers");
    }
    if (producers.empty()) {
      sources.push_back(c.component);
    } else {
      upstream[c.component] = *producers.begin();
    }
    if (g.links_from(c.component).empty()) sinks.push_back(c.component);
  }
  if (sources.size() != 1) throw unsupported("system must have exactly one source");
  std::string sink;
  if (g.focus) {
    sink = *g.focus;
  } else if (sinks.size() == 1) {
    sink = sinks.front();
  } else {
    throw unsupported("system has several sinks and no focus");
  }

  std::vector<std::string> path{sink};
  while (upstream.count(path.back())) path.push_back(upstream.at(path.back()));
  std::reverse(path.begin(), path.end());

  DerivedContract d;
  d.source = path.front();
  d.sink = path.back();
  d.assumption = g.find(d.source)->assumption;
  d.guarantee = g.find(d.sink)->guarantee;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (const auto& l : g.links) {
      if (l.from_component != path[i] || l.to_component != path[i + 1]) continue;
      auto o = std::find_if(obligations.begin(), obligations.end(),
                            [&](const Obligation& x) { return x.link.id == l.id; });
      if (o == obligations.end()) {
        throw CompositionError(CompositionErrorKind::ObligationNotDischarged,
                               "no obligation for link " + l.id);
      }
      auto v = std::find_if(verdicts.begin(), verdicts.end(),
                            [&](const Verdict& x) { return x.obligation_id == o->id; });
      if (v == verdicts.end()) throw not_discharged(o->id, VerdictStatus::Exhausted);
      d.provenance.push_back({o->rule, l.id});
    }
  }
  return d;
}

std::string render_obligation(const Obligation& o, const Verdict& v,
                              const ReportOptions& options) {
  std::ostringstream out;
  out << "obligation " << o.id << "\n";
  out << "  link: " << o.link.id << " " << o.link.from_component << "." << o.link.from_selector
      << " -> " << o.link.to_component << "." << o.link.to_selector << " "
      << link_kind_name(o.link.kind) << "\n";
  out << "  rule: " << o.rule << "\n";
  out << "  vars:";
  for (std::size_t i = 0; i < o.vars.size(); ++i) {
    out << (i ? ", " : " ") << o.vars[i].name << " : " << o.vars[i].type.str();
  }
  out << "\n";
  out << "  bounds: " << format_bounds(o.bounds) << "\n";
  out << "  formula: " << to_string(o.body()) << "\n";
  out << "  status: " << verdict_status_name(v.status) << "\n";
  out << "  method: " << v.method << "\n";
  out << "  envsChecked: " << v.envs_checked << "\n";
  out << "  counterexample: "
      << (v.counterexample ? format_bindings(v.counterexample->bindings) : "none") << "\n";
  if (options.timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f ms",
                  std::chrono::duration<double, std::milli>(v.elapsed).count());
    out << "  elapsed: " << buf << "\n";
  }
  return out.str();
}

std::string render_derived(const DerivedContract& d) {
  std::ostringstream out;
  out << "derived " << d.source << " -> " << d.sink << "\n";
  out << "  contract: A_" << d.source << " => <> G_" << d.sink << "\n";
  out << "  provenance:";
  if (d.provenance.empty()) out << " none";
  for (std::size_t i = 0; i < d.provenance.size(); ++i) {
    out << (i ? ", " : " ") << d.provenance[i].rule << "(" << d.provenance[i].link_id << ")";
  }
  out << "\n";
  out << "  assume: " << to_string(d.assumption) << "\n";
  out << "  guarantee: " << to_string(d.guarantee) << "\n";
  return out.str();
}

}  // namespace agc
