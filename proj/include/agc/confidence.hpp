#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "agc/contract.hpp"

namespace agc {

enum class Technique { Testing, SimulationBasedTesting, FormalMethods };

constexpr Technique kTechniques[] = {Technique::Testing, Technique::SimulationBasedTesting,
                                     Technique::FormalMethods};

const char* technique_name(Technique t);
// Column heading, e.g. "Simulation-Based Testing".
const char* technique_title(Technique t);

struct ConfidenceLedger {
  std::map<std::string, std::set<Technique>> entries;
  std::map<std::pair<std::string, Technique>, std::vector<std::string>> evidence;

  friend bool operator==(const ConfidenceLedger&, const ConfidenceLedger&) = default;
};

/// Adds one (component, technique, evidence) triple; recording a triple
/// twice leaves the ledger unchanged. Throws GraphError(UnknownComponent).
ConfidenceLedger record(ConfidenceLedger ledger, const SystemGraph& g,
                        const std::string& component, Technique technique,
                        const std::string& evidence_ref);

struct ConfidenceRow {
  std::string component;
  std::set<Technique> techniques;
  std::vector<std::pair<Technique, std::string>> evidence;
  // Techniques applied, out of three.
  int score = 0;
};

struct ConfidenceReport {
  std::vector<ConfidenceRow> rows;  // in system declaration order
  int system_score = 0;             // minimum over rows
};

ConfidenceReport report(const ConfidenceLedger& ledger, const SystemGraph& g);

// "0", "1/3", "2/3" or "1".
std::string format_score(int thirds);

std::string render_records(const ConfidenceReport& r);
std::string render_table(const ConfidenceReport& r);

/// Lines `Component Technique evidenceRef`; `#` starts a comment.
/// Throws GraphError(UnknownComponent) or Error on malformed lines.
ConfidenceLedger parse_ledger(const std::string& text, const SystemGraph& g,
                              const std::string& file = "<ledger>");

}  // namespace agc
