// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "phishpond/assessment.hpp"
#include "phishpond/bot.hpp"
#include "phishpond/content_pack.hpp"
#include "phishpond/game_engine.hpp"
#include "phishpond/persistence.hpp"
#include "phishpond/phish_rules.hpp"
#include "phishpond/url_model.hpp"
#include "test_support.hpp"

using namespace phishpond;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

ContentPack demo_pack(std::uint64_t seed) {
  PackGenerationOptions options;
  options.seed = seed;
  return generate_pack(options);
}

constexpr std::string_view kNumbersSentence =
    "Legitimate websites usually do not have numbers at the beginning of their URLs";

Outcome example_url() {
  const std::string raw(testing::kExampleUrl);
  const std::vector<std::string> brands = {"hsbc"};

  const auto start = Clock::now();
  const AnalysisReport report = analyze(parse_url(raw), builtin_ruleset(), brands);
  const double elapsed = seconds_since(start);

  const std::size_t host_start = raw.find("187.52.91.111");
  const Span host{host_start, host_start + 13};
  bool on_host = false;
  for (const auto& f : report.findings) {
    on_host = on_host || (f.component == ComponentId{ComponentKind::kIPv4Host, 0} && f.span == host);
  }
  const bool explained = report.primary_finding &&
                         report.primary_finding->explanation.find(kNumbersSentence) != std::string::npos;

  // The same sentence must reach the player when the worm is eaten.
  ContentPack pack = testing::small_pack();
  GameState state = new_session(GameConfig{}, pack, 1);
  state.current_worm = 0;
  state.phase = Phase::kAwaitClassify;
  const StepResult step = apply_action(state, PlayerAction::eat());
  bool feedback = false;
  for (const auto& e : step.events) {
    feedback = feedback || (e.kind == EventKind::kFeedback && e.text.find(kNumbersSentence) != std::string::npos);
  }

  const bool pass = report.verdict == Verdict::kPhishing && on_host && explained && feedback && elapsed < 1e-3;
  return {pass, fmt("verdict=%s ipv4_span=[%zu,%zu) finding=%d feedback=%d analyze=%.1fus (limit 1000us)",
                    std::string(to_string(report.verdict)).c_str(), host.start, host.end, on_host, feedback,
                    elapsed * 1e6)};
}

// Random states reached by random play, then AskBigFish.
Outcome help_penalty() {
  const GameConfig config;
  const auto content = prepare_pack(demo_pack(1));
  Rng rng(2024);
  std::size_t checked = 0, exact = 0, floored = 0, bad = 0;
  while (checked < 1000) {
    GameState state = new_session(config, content, rng.next());
    const auto prefix = rng.below(60);
    for (std::uint64_t i = 0; i < prefix && !is_terminal(state); ++i) {
      PlayerAction action;
      switch (rng.below(4)) {
        case 0: action = PlayerAction::eat(); break;
        case 1: action = PlayerAction::reject(); break;
        case 2: action = PlayerAction::tick(static_cast<double>(rng.below(4000)) / 100.0); break;
        default: {
          const auto& comps = state.current_prepared()->url.components();
          action = PlayerAction::locate(comps[rng.below(comps.size())].id);
        }
      }
      try {
        state = apply_action(state, action).new_state;
      } catch (const IllegalAction&) {
      }
    }
    if (state.phase != Phase::kAwaitClassify) continue;
    ++checked;

    const double before = state.remaining_time;
    const StepResult step = apply_action(state, PlayerAction::ask_big_fish());
    const bool hinted = step.events.size() >= 2 && step.events[0].kind == EventKind::kHintGiven &&
                        !step.events[0].text.empty() && step.events[1].kind == EventKind::kTimePenalty &&
                        step.events[1].seconds == 100.0;
    bool ok = hinted && step.score_delta == 0 && step.new_state.score == state.score;
    if (before > 100.0) {
      ok = ok && step.new_state.remaining_time == before - 100.0 && step.new_state.phase == Phase::kAwaitClassify &&
           step.new_state.current_worm == state.current_worm && step.events.size() == 2;
      exact += ok;
    } else {
      ok = ok && step.new_state.remaining_time == 0.0 && step.new_state.phase == Phase::kGameOver &&
           step.events.back().kind == EventKind::kTimeOut;
      floored += ok;
    }
    bad += !ok;
  }
  return {bad == 0, fmt("states=%zu exact_minus_100=%zu floored_to_0=%zu failures=%zu", checked, exact, floored, bad)};
}

Outcome replay_sessions() {
  const std::vector<ContentPack> packs = {demo_pack(11), demo_pack(12), testing::small_pack()};
  std::vector<std::shared_ptr<const PreparedPack>> prepared;
  for (const auto& p : packs) prepared.push_back(prepare_pack(p));
  const std::vector<std::string> policies = {"oracle", "random:0.5", "random:0.8", "learner:0.3:0.95",
                                             "random:0.2"};

  const auto start = Clock::now();
  std::size_t verified = 0, diverged = 0, records = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t which = i % packs.size();
    BotPolicy policy = BotPolicy::parse(policies[i % policies.size()], 1000 + i);
    policy.help_probability = (i % 4 == 0) ? 0.15 : 0.0;
    policy.think_seconds = static_cast<double>(i % 7) + 0.25;
    const SimulationResult sim = simulate(GameConfig{}, prepared[which], i * 7919 + 3, policy);

    std::ostringstream out;
    write_log(sim.log, out);
    std::istringstream in(out.str());
    const SessionLog reread = read_log(in);
    records += reread.records.size();
    const bool ok = reread == sim.log && replay(reread, packs[which]).verified;
    verified += ok;
    diverged += !ok;
  }
  const double elapsed = seconds_since(start);
  return {verified == 200 && diverged == 0 && elapsed < 10.0,
          fmt("sessions=200 verified=%zu diverged=%zu records=%zu time=%.2fs (limit 10s)", verified, diverged, records,
              elapsed)};
}

Outcome parser_round_trip() {
  const auto start = Clock::now();
  std::vector<std::string> corpus = testing::random_urls(31337, 10000);
  const auto edges = testing::edge_case_urls();
  corpus.insert(corpus.end(), edges.begin(), edges.end());

  std::size_t parsed = 0, rejected = 0, mismatched = 0;
  for (const auto& raw : corpus) {
    try {
      mismatched += !testing::reconstructs(parse_url(raw));
      ++parsed;
    } catch (const MalformedUrl&) {
      ++rejected;
    }
  }
  const double elapsed = seconds_since(start);
  return {edges.size() == 50 && mismatched == 0 && parsed > 0 && elapsed < 5.0,
          fmt("inputs=%zu (random 10000 + edge %zu) parsed=%zu rejected=%zu mismatched=%zu time=%.2fs (limit 5s)",
              corpus.size(), edges.size(), parsed, rejected, mismatched, elapsed)};
}

Outcome level_structure() {
  const GameConfig config;
  std::size_t good = 0;
  double worst_gap = 1e9;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GameState state = new_session(config, demo_pack(seed), seed);
    std::array<double, kLevelCount> mean{};
    for (std::size_t l = 0; l < kLevelCount; ++l) {
      double sum = 0;
      for (std::size_t i : state.level_queues[l]) sum += state.content->pack.items[i].difficulty;
      mean[l] = sum / static_cast<double>(state.level_queues[l].size());
    }
    const auto& t = state.config.level_time;
    const bool ok = t[0] > t[1] && t[1] > t[2] && mean[0] <= mean[1] && mean[1] <= mean[2];
    worst_gap = std::min({worst_gap, mean[1] - mean[0], mean[2] - mean[1]});
    good += ok;
  }
  return {good == 100, fmt("seeds=100 ordered=%zu times=%.0f>%.0f>%.0f min_mean_difficulty_step=%.3f", good,
                           config.level_time[0], config.level_time[1], config.level_time[2], worst_gap)};
}

Outcome assessment_monotonicity() {
  const SelfEfficacyModel model;
  std::size_t wins = 0;
  double max_error = 0.0;
  auto oracle_se = [&](const KnowledgeStats& s) {
    const double pk = (static_cast<double>(s.classify_correct) + 1.0) / (static_cast<double>(s.classify_total) + 2.0);
    const double ck = (static_cast<double>(s.locate_correct) + 1.0) / (static_cast<double>(s.locate_total) + 2.0);
    const double x = model.b0 + model.b1 * pk + model.b2 * ck + model.b3 * pk * ck;
    return 0.5 * (1.0 + std::tanh(x / 2.0));
  };
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto content = prepare_pack(demo_pack(100 + seed));
    const SimulationResult oracle = simulate(GameConfig{}, content, seed, BotPolicy::parse("oracle", seed), model);
    const SimulationResult coin = simulate(GameConfig{}, content, seed, BotPolicy::parse("random:0.5", seed), model);
    wins += oracle.summary.self_efficacy > coin.summary.self_efficacy;
    max_error = std::max({max_error, std::abs(oracle.summary.self_efficacy - oracle_se(oracle.stats)),
                          std::abs(coin.summary.self_efficacy - oracle_se(coin.stats))});
  }
  return {wins == 50 && max_error <= 1e-9,
          fmt("pairs=50 oracle_wins=%zu max_abs_error_vs_logistic_oracle=%.3g (limit 1e-9)", wins, max_error)};
}

Outcome pack_round_trip() {
  const auto start = Clock::now();
  std::size_t clean = 0, equal = 0, items = 0;
  const std::vector<std::vector<std::string>> brand_sets = {
      {"hsbc", "paypal", "amazon", "google"}, {"barclays", "ebay"}, {"netflix"}, {"apple", "chase", "wellsfargo"}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PackGenerationOptions options;
    options.seed = seed;
    options.count = 36 + (seed % 5) * 6;
    options.brands = brand_sets[seed % brand_sets.size()];
    options.name = "pack" + std::to_string(seed);
    const ContentPack pack = generate_pack(options);
    items += pack.items.size();
    clean += validate_pack(pack, builtin_ruleset()).clean();
    std::stringstream buffer;
    write_pack(pack, buffer);
    const PackLoadResult loaded = load_pack(buffer);
    equal += loaded.ok() && *loaded.pack == pack;
  }
  const double elapsed = seconds_since(start);
  return {clean == 100 && equal == 100 && elapsed < 5.0,
          fmt("packs=100 items=%zu zero_warning=%zu round_trip_equal=%zu time=%.2fs (limit 5s)", items, clean, equal,
              elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"example-url-fidelity", example_url},
      {"help-penalty-fidelity", help_penalty},
      {"determinism-replay", replay_sessions},
      {"parser-round-trip", parser_round_trip},
      {"level-structure", level_structure},
      {"assessment-monotonicity", assessment_monotonicity},
      {"pack-round-trip-generator-soundness", pack_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
