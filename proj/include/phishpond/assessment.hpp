#pragma once

// Knowledge and self-efficacy estimates from play telemetry.
//
// Procedural knowledge (know-how) is classification accuracy, conceptual
// knowledge (know-why) is component-localization accuracy, both Laplace
// smoothed. Self-efficacy is a logistic function of both and their product,
// with nonnegative weights so more knowledge never lowers the estimate.
// Help requests are counted but do not enter the estimate.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phishpond/game_engine.hpp"

namespace phishpond {

struct KnowledgeStats {
  std::uint64_t classify_correct = 0;
  std::uint64_t classify_total = 0;
  std::uint64_t locate_correct = 0;
  std::uint64_t locate_total = 0;
  std::uint64_t help_requests = 0;

  friend bool operator==(const KnowledgeStats&, const KnowledgeStats&) = default;
};

struct SelfEfficacyModel {
  double b0 = -2.2;  // intercept
  double b1 = 2.0;   // procedural knowledge
  double b2 = 2.0;   // conceptual knowledge
  double b3 = 1.0;   // interaction

  // Throws std::invalid_argument if b1, b2 or b3 is negative.
  void validate() const;

  friend bool operator==(const SelfEfficacyModel&, const SelfEfficacyModel&) = default;
};

struct KnowledgeScores {
  double pk = 0.5;
  double ck = 0.5;
};

struct AssessmentReport {
  double pk = 0.5;
  double ck = 0.5;
  double interaction = 0.25;
  double self_efficacy = 0.0;
  KnowledgeStats counts;

  friend bool operator==(const AssessmentReport&, const AssessmentReport&) = default;
};

// Constructs of the threat-avoidance model that play cannot observe. They are
// listed in reports as absent instead of being imputed.
const std::vector<std::string>& unobserved_constructs();

KnowledgeStats update_stats(KnowledgeStats stats, std::span<const Event> events);
KnowledgeStats update_stats(KnowledgeStats stats, const StepResult& result);

KnowledgeScores knowledge_scores(const KnowledgeStats& stats);

double logistic(double x);

// Pre-logistic linear score b0 + b1*pk + b2*ck + b3*pk*ck.
double efficacy_score(const SelfEfficacyModel& model, double pk, double ck);

double self_efficacy(const SelfEfficacyModel& model, double pk, double ck);

AssessmentReport assess(const KnowledgeStats& stats, const SelfEfficacyModel& model = {});

}  // namespace phishpond
