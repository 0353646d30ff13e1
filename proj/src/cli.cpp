#include "agc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "agc/composition.hpp"
#include "agc/confidence.hpp"
#include "agc/dsl.hpp"
#include "agc/rover.hpp"

#ifndef AGC_DATA_DIR
#define AGC_DATA_DIR "data"
#endif

namespace agc {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace fs = std::filesystem;

std::uint64_t parse_count(const std::string& key, const std::string& text, bool allow_zero) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text[0] == '-' || (v == 0 && !allow_zero)) {
    throw UsageError("`" + key + "` needs a " + (allow_zero ? "non-negative" : "positive") +
                     " integer, got `" + text + "`");
  }
  return v;
}

std::uint64_t parse_positive(const std::string& key, const std::string& text) {
  return parse_count(key, text, false);
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << format_diagnostic(e) << "\n";
    return 1;
  }
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = fs::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("cannot write " + path.string());
}

std::string bundled(const std::string& name) { return (fs::path(data_dir()) / name).string(); }

std::string contracts_or_default(const RunConfig& c) {
  if (!c.contracts_path.empty()) return c.contracts_path;
  return bundled(c.goal_mode ? "rover_goal.agc" : "rover.agc");
}

std::string system_or_default(const RunConfig& c) {
  if (!c.system_path.empty()) return c.system_path;
  return bundled(c.goal_mode ? "rover_goal.sys" : "rover.sys");
}

SystemGraph load_system(const RunConfig& c) {
  const std::string cpath = contracts_or_default(c);
  const std::string spath = system_or_default(c);
  auto contracts = parse_contract_file(read_text_file(cpath), cpath);
  return parse_system_file(read_text_file(spath), contracts, spath);
}

Policy parse_policy(const std::string& s) {
  if (s == "halt") return Policy::HaltOnViolation;
  if (s == "log") return Policy::LogAndContinue;
  throw UsageError("policy must be `halt` or `log`, got `" + s + "`");
}

bool parse_flag(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s.empty()) return true;
  if (s == "false" || s == "0") return false;
  throw UsageError("`" + key + "` expects true or false, got `" + s + "`");
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "contracts") c.contracts_path = value;
  else if (key == "system") c.system_path = value;
  else if (key == "world") c.world_path = value;
  else if (key == "ledger") c.ledger_path = value;
  else if (key == "bounds") c.bounds = parse_bounds(value, c.bounds);
  else if (key == "policy") c.policy = parse_policy(value);
  else if (key == "out") c.output_dir = value;
  else if (key == "seed") c.seed = parse_count("seed", value, true);
  else if (key == "goal") c.goal_mode = parse_flag(key, value);
  else if (key == "exhaustive") c.exhaustive = parse_flag(key, value);
  else if (key == "timing") c.timing = parse_flag(key, value);
  else throw UsageError("unknown configuration key `" + key + "`");
}

}  // namespace

DomainBounds parse_bounds(const std::string& text, DomainBounds base) {
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bound `" + item + "` is not `key=value`");
    const std::string key = item.substr(0, eq);
    const std::uint64_t v = parse_positive(key, item.substr(eq + 1));
    if (key == "n") base.max_n = v;
    else if (key == "card") base.max_card = v;
    else if (key == "plans") base.max_plans = v;
    else if (key == "envs") base.max_envs = v;
    else throw UsageError("unknown bound `" + key + "`");
  }
  return base;
}

std::string data_dir() {
  if (const char* d = std::getenv("AGC_DATA_DIR")) return d;
  return AGC_DATA_DIR;
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string path = contracts_or_default(config);
    auto contracts = parse_contract_file(read_text_file(path), path);
    out << path << ": " << contracts.size() << " contract(s) ok\n";
    for (const auto& c : contracts) out << "\n" << print_contract(c);
    return 0;
  });
}

int cmd_compose(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemGraph g = load_system(config);
    const auto obligations = generate_obligations(g, config.bounds);
    DischargeOptions options;
    options.exhaustive = config.exhaustive;

    std::string report;
    std::vector<Verdict> verdicts;
    for (const auto& o : obligations) {
      verdicts.push_back(discharge(o, options));
      report += render_obligation(o, verdicts.back(), ReportOptions{config.timing}) + "\n";
    }
    int status = 0;
    try {
      report += render_derived(derive_system_contract(g, obligations, verdicts));
    } catch (const CompositionError& e) {
      report += std::string("derived none\n  reason: ") + e.what() + "\n";
      status = 1;
    }
    write_file(config.output_dir, "obligations.txt", report);
    out << report;
    return status;
  });
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.world_path.empty()) throw UsageError("run needs --world");
    const WorldState world = load_world(config.world_path);
    const SystemGraph g = load_system(config);

    MonitorOptions options;
    options.policy = config.policy;
    options.interp = world_interp(world);

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    const fs::path log_path = fs::path(config.output_dir) / "events.log";
    std::ofstream log(log_path, std::ios::binary);
    if (!log) throw IoError("cannot write " + log_path.string());
    EventSink sink(log);

    PipelineResult result;
    try {
      result = run_pipeline(g, rover_bodies(world, config.goal_mode),
                            rover_input(world, config.goal_mode), options, &sink);
    } catch (const BodyFailure& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }

    for (const auto& e : result.events) out << format_event(e) << "\n";
    if (auto planner = result.component_envs.find("Planner");
        planner != result.component_envs.end() && planner->second.count("PlanSet") &&
        planner->second.at("PlanSet").size() == 0) {
      out << "Agent: EmptyPlanSet\n";
    }
    std::string plan_text = "plan = none\n";
    if (auto plan = result.final_env.find("plan"); plan != result.final_env.end()) {
      plan_text = "plan = " + plan->second.str() + "\ncardinality = " +
                  std::to_string(plan->second.size()) + "\n";
      out << "plan: " << plan->second.str() << " (" << plan->second.size() << " cells)\n";
    }
    write_file(config.output_dir, "plan.txt", plan_text);

    if (result.clean()) return 0;
    for (const auto& e : result.events) {
      if (e.verdict == MonitorVerdict::Violation) {
        err << "violation: " << format_event(e) << "\n";
        break;
      }
    }
    if (result.halted) {
      err << "halted: " << result.halted->component << " " << phase_name(result.halted->phase)
          << " " << result.halted->formula_id << "\n";
    }
    return 1;
  });
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemGraph g = load_system(config);
    const std::string path =
        config.ledger_path.empty() ? bundled("rover.ledger") : config.ledger_path;
    const ConfidenceReport r = report(parse_ledger(read_text_file(path), g, path), g);
    const std::string table = render_table(r);
    write_file(config.output_dir, "confidence.txt", render_records(r) + "\n" + table);
    out << table;
    return 0;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typed assume-guarantee contracts: check, compose, run and report", "agc"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string bounds, policy = "halt", config_path, out_dir;
  app.add_option("--contracts", config.contracts_path, "Contract file (.agc)");
  app.add_option("--system", config.system_path, "System file (.sys)");
  app.add_option("--world", config.world_path, "World file for `run`");
  app.add_option("--ledger", config.ledger_path, "Confidence ledger for `report`");
  app.add_flag("--goal", config.goal_mode, "Use the goal-mode case study");
  app.add_option("--bounds", bounds, "Enumeration bounds, e.g. n=3,card=4,plans=3,envs=1000000");
  app.add_option("--policy", policy, "Monitor policy: halt or log");
  app.add_option("--out", out_dir, "Output directory (default: $AGC_OUT or .)");
  app.add_option("--seed", config.seed, "Seed for randomized checks");
  app.add_flag("--exhaustive", config.exhaustive, "Enumerate even syntactically entailed obligations");
  app.add_flag("--timing", config.timing, "Include elapsed times in reports");
  app.add_option("--config", config_path, "Configuration file; its settings override flags");

  auto* check = app.add_subcommand("check", "Parse and typecheck contracts");
  auto* compose = app.add_subcommand("compose", "Discharge link obligations and derive the system contract");
  auto* run = app.add_subcommand("run", "Run the monitored rover pipeline on a world");
  auto* rep = app.add_subcommand("report", "Render the confidence report");
  rep->add_option("ledger", config.ledger_path, "Confidence ledger");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const int setup = guarded(err, [&] {
    if (!bounds.empty()) config.bounds = parse_bounds(bounds);
    config.policy = parse_policy(policy);
    if (!out_dir.empty()) {
      config.output_dir = out_dir;
    } else if (const char* env = std::getenv("AGC_OUT")) {
      config.output_dir = env;
    }
    if (!config_path.empty()) {
      std::vector<CLI::ConfigItem> items;
      try {
        items = CLI::ConfigTOML().from_file(config_path);
      } catch (const CLI::Error& e) {
        throw IoError("cannot read config " + config_path + ": " + e.what());
      }
      for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;
        if (!item.parents.empty()) {
          const auto* sub = app.get_subcommands().front();
          if (item.parents.size() != 1 || item.parents[0] != sub->get_name()) continue;
        }
        std::string value;
        for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
        apply_setting(config, item.name, value);
      }
    }
    return 0;
  });
  if (setup != 0) return setup;

  if (check->parsed()) return cmd_check(config, out, err);
  if (compose->parsed()) return cmd_compose(config, out, err);
  if (run->parsed()) return cmd_run(config, out, err);
  return cmd_report(config, out, err);
}

}  // namespace agc
