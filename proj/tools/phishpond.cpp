// phishpond: URL analysis, pack tooling, bot simulation, replay and the
// session service.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"

#include "phishpond/assessment.hpp"
#include "phishpond/bot.hpp"
#include "phishpond/content_pack.hpp"
#include "phishpond/game_engine.hpp"
#include "phishpond/json_codec.hpp"
#include "phishpond/persistence.hpp"
#include "phishpond/phish_rules.hpp"
#include "phishpond/session_service.hpp"
#include "phishpond/url_model.hpp"

using namespace phishpond;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::optional<ContentPack> load_or_report(const std::string& path) {
  PackLoadResult loaded = load_pack_file(path);
  for (const auto& e : loaded.errors) std::cerr << path << ": " << e.message() << '\n';
  return loaded.pack;
}

std::optional<GameConfig> load_config(const std::string& path) {
  GameConfig config;
  if (path.empty()) return config;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open config " << path << '\n';
    return std::nullopt;
  }
  try {
    from_json(Json::parse(in), config);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return std::nullopt;
  }
  return config;
}

void print_human(const AnalysisReport& report, const std::string& url) {
  std::cout << url << '\n' << "verdict: " << to_string(report.verdict) << '\n';
  for (const auto& f : report.findings) {
    std::cout << "  [" << f.rule_id << " sev " << f.severity << "] " << describe(f.component) << " ["
              << f.span.start << "," << f.span.end << ") " << f.explanation << '\n';
  }
}

int cmd_analyze(const std::string& url, std::vector<std::string> brands, const std::string& pack_path, bool json) {
  if (!pack_path.empty()) {
    auto pack = load_or_report(pack_path);
    if (!pack) return kExitError;
    brands.insert(brands.end(), pack->brands.begin(), pack->brands.end());
  }
  for (auto& b : brands) b = to_lower(b);
  ParsedUrl parsed;
  try {
    parsed = parse_url(url);
  } catch (const MalformedUrl& e) {
    if (json) {
      Json out = Json::object();
      out["error"] = "MalformedUrl";
      out["offset"] = e.offset();
      out["message"] = e.reason();
      std::cout << out.dump(2) << '\n';
    } else {
      std::cerr << e.what() << '\n';
    }
    return kExitError;
  }
  const AnalysisReport report = analyze(parsed, builtin_ruleset(), brands);
  if (json) {
    Json out = Json(report);
    out["url"] = url;
    out["components"] = segmentation(parsed);
    std::cout << out.dump(2) << '\n';
  } else {
    print_human(report, url);
  }
  return report.verdict == Verdict::kPhishing ? kExitFail : kExitOk;
}

int cmd_pack_validate(const std::string& path, bool strict) {
  auto pack = load_or_report(path);
  if (!pack) return kExitFail;
  const ValidationReport report = validate_pack(*pack, builtin_ruleset());
  for (const auto& w : report.warnings) {
    std::cerr << path << ":" << w.line << ": warning: " << w.message << " (" << w.url << ")\n";
  }
  std::cout << pack->name << "@" << pack->version << ": " << pack->items.size() << " items, 0 errors, "
            << report.warnings.size() << " warnings\n";
  return strict && !report.clean() ? kExitFail : kExitOk;
}

int cmd_pack_generate(const PackGenerationOptions& options, const std::string& out_path) {
  ContentPack pack;
  try {
    pack = generate_pack(options);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitError;
  }
  if (out_path.empty() || out_path == "-") {
    write_pack(pack, std::cout);
  } else {
    std::ofstream out(out_path);
    write_pack(pack, out);
    if (!out) {
      std::cerr << "cannot write " << out_path << '\n';
      return kExitError;
    }
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string pack_path;
  std::uint64_t seed = 0;
  std::string policy = "oracle";
  std::optional<std::uint64_t> policy_seed;
  double think_seconds = 5.0;
  double help_probability = 0.0;
  std::string log_path;
  std::string config_path;
};

int cmd_simulate(const SimulateArgs& args) {
  auto pack = load_or_report(args.pack_path);
  if (!pack) return kExitError;
  auto config = load_config(args.config_path);
  if (!config) return kExitError;
  try {
    BotPolicy policy = BotPolicy::parse(args.policy, args.policy_seed.value_or(args.seed));
    policy.think_seconds = args.think_seconds;
    policy.help_probability = args.help_probability;
    policy.validate();
    SimulationResult result = simulate(*config, prepare_pack(*pack), args.seed, policy);
    if (!args.log_path.empty()) {
      std::ofstream out(args.log_path);
      write_log(result.log, out);
    }
    Json out = Json::object();
    out["policy"] = policy.describe();
    out["seed"] = args.seed;
    out["final_phase"] = std::string(to_string(result.final_state.phase));
    out["final_level"] = std::string(to_string(result.final_state.level));
    out["score"] = result.final_state.score;
    out["summary"] = result.summary;
    std::cout << out.dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

int cmd_replay(const std::string& log_path, const std::string& pack_path) {
  auto pack = load_or_report(pack_path);
  if (!pack) return kExitError;
  std::ifstream in(log_path);
  if (!in) {
    std::cerr << "cannot open " << log_path << '\n';
    return kExitError;
  }
  try {
    const SessionLog log = read_log(in);
    const ReplayOutcome outcome = replay(log, *pack);
    if (outcome.verified) {
      std::cout << "Verified (" << log.records.size() << " records)\n";
      return kExitOk;
    }
    std::cout << "Diverged at seq " << outcome.diverged_seq << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitError;
  }
}

int cmd_serve(const std::string& pack_path, const std::string& bind) {
  auto pack = load_or_report(pack_path);
  if (!pack) return kExitError;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "bind address must be HOST:PORT\n";
    return kExitError;
  }
  const std::string host = bind.substr(0, colon);
  const int port = std::atoi(bind.c_str() + colon + 1);

  SessionService service(prepare_pack(std::move(*pack)));
  httplib::Server server;
  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    ServiceResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(".*", route);
  server.Post(".*", route);
  std::cerr << "serving on " << host << ":" << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << bind << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phishpond: anti-phishing pond game engine and tools"};
  app.require_subcommand(1);

  std::string url;
  std::vector<std::string> brands;
  std::string pack_path;
  bool json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one URL (exit 0 legitimate, 1 phishing, 2 malformed)");
  analyze_cmd->add_option("url", url, "URL to analyze")->required();
  analyze_cmd->add_option("-b,--brand", brands, "Brand name to check for (repeatable)");
  analyze_cmd->add_option("--pack", pack_path, "Take brands from this pack");
  analyze_cmd->add_flag("--json", json, "Print the report as JSON");

  auto* rules_cmd = app.add_subcommand("rules", "Print the rule catalog as JSON");

  auto* pack_cmd = app.add_subcommand("pack", "Content pack tooling");
  pack_cmd->require_subcommand(1);
  std::string validate_path;
  bool strict = false;
  auto* validate_cmd = pack_cmd->add_subcommand("validate", "Load a pack and cross-check it against the rules");
  validate_cmd->add_option("path", validate_path, "Pack file")->envname("PHISHPOND_PACK")->required();
  validate_cmd->add_flag("--strict", strict, "Exit nonzero on rule divergence warnings");

  PackGenerationOptions gen;
  std::string gen_out;
  auto* generate_cmd = pack_cmd->add_subcommand("generate", "Generate a pack from the rule recipes");
  generate_cmd->add_option("-n,--count", gen.count, "Number of items")->capture_default_str();
  generate_cmd->add_option("-s,--seed", gen.seed, "Generator seed")->capture_default_str();
  generate_cmd->add_option("--brands", gen.brands, "Brands (comma separated)")->delimiter(',')->capture_default_str();
  generate_cmd->add_option("--name", gen.name, "Pack name")->capture_default_str();
  generate_cmd->add_option("--version", gen.version, "Pack version")->capture_default_str();
  generate_cmd->add_option("-o,--out", gen_out, "Output file (default stdout)");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Play a headless session with a bot");
  simulate_cmd->add_option("--pack", sim.pack_path, "Pack file")->envname("PHISHPOND_PACK")->required();
  simulate_cmd->add_option("-s,--seed", sim.seed, "Session seed")->capture_default_str();
  simulate_cmd->add_option("-p,--policy", sim.policy, "oracle | random:P | learner:START:END")->capture_default_str();
  simulate_cmd->add_option("--policy-seed", sim.policy_seed, "Bot seed (default: session seed)");
  simulate_cmd->add_option("--think", sim.think_seconds, "Seconds ticked before each decision")->capture_default_str();
  simulate_cmd->add_option("--help-rate", sim.help_probability, "Chance of asking the big fish per worm")
      ->capture_default_str();
  simulate_cmd->add_option("--log", sim.log_path, "Write the session log here");
  simulate_cmd->add_option("--config", sim.config_path, "Game config JSON (partial overrides)");

  std::string log_path;
  std::string replay_pack;
  auto* replay_cmd = app.add_subcommand("replay", "Verify a session log (exit 0 verified, 1 diverged, 2 error)");
  replay_cmd->add_option("log", log_path, "Session log")->required();
  replay_cmd->add_option("--pack", replay_pack, "Pack file")->envname("PHISHPOND_PACK")->required();

  std::string serve_pack;
  std::string bind = "127.0.0.1:8080";
  auto* serve_cmd = app.add_subcommand("serve", "Serve the session protocol over HTTP");
  serve_cmd->add_option("--pack", serve_pack, "Pack file")->envname("PHISHPOND_PACK")->required();
  serve_cmd->add_option("--bind", bind, "HOST:PORT")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (analyze_cmd->parsed()) return cmd_analyze(url, brands, pack_path, json);
  if (rules_cmd->parsed()) {
    std::cout << rule_catalog(builtin_ruleset()).dump(2) << '\n';
    return kExitOk;
  }
  if (validate_cmd->parsed()) return cmd_pack_validate(validate_path, strict);
  if (generate_cmd->parsed()) return cmd_pack_generate(gen, gen_out);
  if (simulate_cmd->parsed()) return cmd_simulate(sim);
  if (replay_cmd->parsed()) return cmd_replay(log_path, replay_pack);
  if (serve_cmd->parsed()) return cmd_serve(serve_pack, bind);
  return kExitError;
}
