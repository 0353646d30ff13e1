#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "agc/enumerate.hpp"
#include "agc/monitor.hpp"

namespace agc {

struct RunConfig {
  std::string contracts_path;
  std::string system_path;
  std::string world_path;
  std::string ledger_path;
  DomainBounds bounds;
  Policy policy = Policy::HaltOnViolation;
  bool goal_mode = false;
  bool exhaustive = false;
  bool timing = false;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

/// Parses `n=3,card=4,plans=3,envs=1000000`; keys may be omitted or
/// reordered. Throws Error on malformed or non-positive entries.
DomainBounds parse_bounds(const std::string& text, DomainBounds base = {});

// Directory holding the bundled case-study files.
std::string data_dir();

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compose(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point: 0 success, 1 verification failure, 2 usage or IO error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agc
