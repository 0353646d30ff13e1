#include "agc/confidence.hpp"

#include <algorithm>
#include <sstream>

#include "agc/errors.hpp"

namespace agc {

const char* technique_name(Technique t) {
  switch (t) {
    case Technique::Testing: return "Testing";
    case Technique::SimulationBasedTesting: return "SimulationBasedTesting";
    case Technique::FormalMethods: return "FormalMethods";
  }
  return "?";
}

const char* technique_title(Technique t) {
  switch (t) {
    case Technique::Testing: return "Testing";
    case Technique::SimulationBasedTesting: return "Simulation-Based Testing";
    case Technique::FormalMethods: return "Formal Methods";
  }
  return "?";
}

ConfidenceLedger record(ConfidenceLedger ledger, const SystemGraph& g,
                        const std::string& component, Technique technique,
                        const std::string& evidence_ref) {
  if (!g.find(component)) {
    throw GraphError(GraphErrorKind::UnknownComponent, "unknown component `" + component + "`");
  }
  ledger.entries[component].insert(technique);
  auto& refs = ledger.evidence[{component, technique}];
  if (std::find(refs.begin(), refs.end(), evidence_ref) == refs.end()) refs.push_back(evidence_ref);
  return ledger;
}

ConfidenceReport report(const ConfidenceLedger& ledger, const SystemGraph& g) {
  ConfidenceReport r;
  r.system_score = 3;
  for (const auto& c : g.components) {
    ConfidenceRow row;
    row.component = c.component;
    if (auto it = ledger.entries.find(c.component); it != ledger.entries.end()) {
      row.techniques = it->second;
    }
    for (Technique t : row.techniques) {
      if (auto it = ledger.evidence.find({c.component, t}); it != ledger.evidence.end()) {
        for (const auto& ref : it->second) row.evidence.emplace_back(t, ref);
      }
    }
    row.score = static_cast<int>(row.techniques.size());
    r.system_score = std::min(r.system_score, row.score);
    r.rows.push_back(std::move(row));
  }
  if (r.rows.empty()) r.system_score = 0;
  return r;
}

std::string format_score(int thirds) {
  if (thirds <= 0) return "0";
  if (thirds >= 3) return "1";
  return std::to_string(thirds) + "/3";
}

std::string render_records(const ConfidenceReport& r) {
  std::ostringstream out;
  for (const auto& row : r.rows) {
    out << "component " << row.component << "\n";
    out << "  techniques:";
    if (row.techniques.empty()) out << " none";
    for (Technique t : row.techniques) out << " " << technique_name(t);
    out << "\n  score: " << format_score(row.score) << "\n";
    for (const auto& [t, ref] : row.evidence) {
      out << "  evidence: " << technique_name(t) << " " << ref << "\n";
    }
  }
  out << "system\n  score: " << format_score(r.system_score)
      << " (weakest link, non-normative)\n";
  return out.str();
}

namespace {

std::size_t columns(const std::string& s) {
  std::size_t cps = 0;
  for (unsigned char ch : s) cps += (ch & 0xC0) != 0x80;
  return cps;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t used = columns(s);
  return s + std::string(width > used ? width - used : 0, ' ');
}

}  // namespace

std::string render_table(const ConfidenceReport& r) {
  std::vector<std::string> header{"Component"};
  for (Technique t : kTechniques) header.push_back(technique_title(t));
  header.push_back("Score");

  std::vector<std::vector<std::string>> lines{header};
  for (const auto& row : r.rows) {
    std::vector<std::string> line{row.component};
    for (Technique t : kTechniques) line.push_back(row.techniques.count(t) ? "✓" : "✗");
    line.push_back(format_score(row.score));
    lines.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.size(); ++i) width[i] = std::max(width[i], columns(l[i]));
  }

  std::ostringstream out;
  for (const auto& l : lines) {
    std::string text;
    for (std::size_t i = 0; i < l.size(); ++i) {
      text += i + 1 < l.size() ? pad(l[i], width[i] + 2) : l[i];
    }
    out << text << "\n";
  }
  out << "System score: " << format_score(r.system_score) << " (weakest link, non-normative)\n";
  return out.str();
}

ConfidenceLedger parse_ledger(const std::string& text, const SystemGraph& g,
                              const std::string& file) {
  ConfidenceLedger ledger;
  std::istringstream in(text);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    std::istringstream words(raw.substr(0, raw.find('#')));
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    const std::string where = file + ":" + std::to_string(line) + ": ";
    if (w.size() < 2 || w.size() > 3) {
      throw Error(where + "expected `Component Technique [evidence]`");
    }
    auto t = std::find_if(std::begin(kTechniques), std::end(kTechniques),
                          [&](Technique x) { return w[1] == technique_name(x); });
    if (t == std::end(kTechniques)) throw Error(where + "unknown technique `" + w[1] + "`");
    try {
      ledger = record(std::move(ledger), g, w[0], *t, w.size() == 3 ? w[2] : "-");
    } catch (const GraphError& e) {
      throw GraphError(e.kind(), where + e.what());
    }
  }
  return ledger;
}

}  // namespace agc
