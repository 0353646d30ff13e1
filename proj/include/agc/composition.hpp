#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "agc/contract.hpp"
#include "agc/enumerate.hpp"
#include "agc/eval.hpp"

namespace agc {

/// Entailment premise of one link: for every assignment of `vars`,
/// `premise => consequent`.
struct Obligation {
  std::string id;
  Link link;
  std::string rule;  // "PR1" for equal links, "PR2" for subset links
  std::vector<Port> vars;
  Formula premise = Formula::truth();
  Formula consequent = Formula::truth();
  DomainBounds bounds;

  Formula body() const { return Formula::implies(premise, consequent); }
};

enum class VerdictStatus { Discharged, Refuted, Exhausted };
const char* verdict_status_name(VerdictStatus s);

struct Verdict {
  std::string obligation_id;
  VerdictStatus status = VerdictStatus::Exhausted;
  std::optional<Env> counterexample;
  // Environments settled, either evaluated or pruned by a false premise.
  std::uint64_t envs_checked = 0;
  std::chrono::nanoseconds elapsed{0};
  // "syntactic" when every consequent conjunct occurs among the premises,
  // "enumeration" otherwise.
  std::string method;
};

struct DischargeOptions {
  // Enumerate even when the syntactic check would settle the obligation.
  bool exhaustive = false;
  Interp interp = Interp::obstacles_everywhere();
};

/// One obligation per link, in link order. Obligation ids are O1, O2, ...
std::vector<Obligation> generate_obligations(const SystemGraph& g,
                                             const DomainBounds& bounds = {});

/// Never throws on budget exhaustion; reports Exhausted instead.
Verdict discharge(const Obligation& o, const DischargeOptions& options = {});

struct RuleApplication {
  std::string rule;
  std::string link_id;
};

struct DerivedContract {
  std::string source;
  std::string sink;
  Formula assumption = Formula::truth();
  Formula guarantee = Formula::truth();
  std::vector<RuleApplication> provenance;
};

/// A_source => <> G_sink along the source-to-sink path. Throws
/// CompositionError(ObligationNotDischarged | UnsupportedTopology).
DerivedContract derive_system_contract(const SystemGraph& g,
                                       const std::vector<Obligation>& obligations,
                                       const std::vector<Verdict>& verdicts);

struct ReportOptions {
  bool timing = false;
};

std::string render_obligation(const Obligation& o, const Verdict& v,
                              const ReportOptions& options = {});
std::string render_derived(const DerivedContract& d);

}  // namespace agc
