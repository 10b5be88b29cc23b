#include "phishpond/assessment.hpp"

#include <cmath>
#include <stdexcept>

namespace phishpond {

const std::vector<std::string>& unobserved_constructs() {
  static const std::vector<std::string> constructs = {
      "perceived_severity", "perceived_susceptibility", "perceived_threat",      "safeguard_effectiveness",
      "safeguard_cost",     "avoidance_motivation",     "avoidance_behaviour",
  };
  return constructs;
}

void SelfEfficacyModel::validate() const {
  if (b1 < 0.0 || b2 < 0.0 || b3 < 0.0) {
    throw std::invalid_argument("self-efficacy weights b1, b2, b3 must be nonnegative");
  }
}

KnowledgeStats update_stats(KnowledgeStats stats, std::span<const Event> events) {
  for (const auto& event : events) {
    switch (event.kind) {
      case EventKind::kClassifiedCorrect:
        ++stats.classify_correct;
        ++stats.classify_total;
        break;
      case EventKind::kClassifiedWrong:
        ++stats.classify_total;
        break;
      case EventKind::kLocateCorrect:
        ++stats.locate_correct;
        ++stats.locate_total;
        break;
      case EventKind::kLocateWrong:
        ++stats.locate_total;
        break;
      case EventKind::kHintGiven:
        ++stats.help_requests;
        break;
      default:
        break;
    }
  }
  return stats;
}

KnowledgeStats update_stats(KnowledgeStats stats, const StepResult& result) {
  return update_stats(stats, std::span<const Event>(result.events));
}

KnowledgeScores knowledge_scores(const KnowledgeStats& stats) {
  auto smoothed = [](std::uint64_t correct, std::uint64_t total) {
    return (static_cast<double>(correct) + 1.0) / (static_cast<double>(total) + 2.0);
  };
  return {smoothed(stats.classify_correct, stats.classify_total), smoothed(stats.locate_correct, stats.locate_total)};
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double efficacy_score(const SelfEfficacyModel& model, double pk, double ck) {
  return model.b0 + model.b1 * pk + model.b2 * ck + model.b3 * pk * ck;
}

double self_efficacy(const SelfEfficacyModel& model, double pk, double ck) {
  return logistic(efficacy_score(model, pk, ck));
}

AssessmentReport assess(const KnowledgeStats& stats, const SelfEfficacyModel& model) {
  model.validate();
  const auto [pk, ck] = knowledge_scores(stats);
  return AssessmentReport{pk, ck, pk * ck, self_efficacy(model, pk, ck), stats};
}

}  // namespace phishpond
