#pragma once

// Heuristic phishing rules over ParsedUrl.
//
// Each rule inspects the URL independently and reports the components it
// incriminates. A URL is phishing iff at least one rule fires; severity only
// orders the findings so the most blatant indicator is explained first.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishpond/url_model.hpp"

namespace phishpond {

struct RuleMatch {
  ComponentId component;
  std::string brand;  // brand that triggered the match, if any
};

using Detector =
    std::function<std::vector<RuleMatch>(const ParsedUrl& url, std::span<const std::string> brands)>;

struct Rule {
  std::string id;    // "R1"
  std::string name;  // "ip_address_host"
  int severity = 1;  // 1..3
  // Teaching text; "{text}" expands to the incriminated component text and
  // "{brand}" to the matched brand.
  std::string description;
  std::string hint;  // short big-fish tip
  bool paper_anchored = false;
  Detector detect;
};

class RuleSet {
 public:
  RuleSet() = default;

  // Throws std::invalid_argument on duplicate id/name or severity outside 1..3.
  void add(Rule rule);
  // Lookup by id ("R3") or name ("brand_hyphen").
  const Rule* find(std::string_view id_or_name) const;
  RuleSet without(std::string_view id_or_name) const;

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

 private:
  std::vector<Rule> rules_;
};

struct Finding {
  std::string rule_id;
  int severity = 1;
  ComponentId component;
  Span span;
  std::string explanation;

  friend bool operator==(const Finding&, const Finding&) = default;
};

enum class Verdict { kPhishing, kLegitimate };

std::string_view to_string(Verdict verdict);

struct AnalysisReport {
  Verdict verdict = Verdict::kLegitimate;
  std::vector<Finding> findings;  // severity desc, then span start asc
  std::optional<Finding> primary_finding;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

enum class PickGrade { kCorrect, kIncorrect };

class NotPhishing : public std::logic_error {
 public:
  NotPhishing() : std::logic_error("component pick graded against a legitimate report") {}
};

// R1..R7. Rules R4..R7 are not among the indicators the game's source
// material names; they carry paper_anchored = false.
const RuleSet& builtin_ruleset();

AnalysisReport analyze(const ParsedUrl& url, const RuleSet& rules, std::span<const std::string> brands);

PickGrade grade_component_pick(const AnalysisReport& report, const ComponentId& pick);

std::string render_explanation(const Rule& rule, std::string_view component_text, std::string_view brand);

// Plain Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace phishpond
