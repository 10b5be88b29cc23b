#include "phishpond/phish_rules.hpp"

#include <algorithm>
#include <numeric>

namespace phishpond {

namespace {

constexpr std::string_view kNumbersSentence =
    "Legitimate websites usually do not have numbers at the beginning of their URLs.";
constexpr std::string_view kNumbersExample = "For example, http://187.52.91.111/.www.hsbc.co.uk";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Labels eligible for registered-domain checks: from the registrable label
// rightwards, or every label when the suffix is unknown.
std::size_t registrable_from(const ParsedUrl& url) { return url.registered_label_index().value_or(0); }

std::vector<RuleMatch> detect_ip_host(const ParsedUrl& url, std::span<const std::string>) {
  if (url.host_kind() != HostKind::kIPv4Literal) return {};
  return {RuleMatch{ComponentId{ComponentKind::kIPv4Host, 0}, {}}};
}

std::vector<RuleMatch> detect_numeric_prefix(const ParsedUrl& url, std::span<const std::string>) {
  const std::string& raw = url.raw();
  Span host = url.host_span();
  if (host.size() == 0 || !is_digit(raw[host.start])) return {};
  if (url.host_kind() == HostKind::kIPv4Literal) return {RuleMatch{ComponentId{ComponentKind::kIPv4Host, 0}, {}}};
  return {RuleMatch{ComponentId{ComponentKind::kHostLabel, 0}, {}}};
}

std::vector<RuleMatch> detect_brand_hyphen(const ParsedUrl& url, std::span<const std::string> brands) {
  std::vector<RuleMatch> out;
  auto labels = url.host_labels();
  for (std::size_t i = registrable_from(url); i < labels.size(); ++i) {
    std::string label = to_lower(labels[i]->text);
    for (const auto& brand : brands) {
      if (label.find(brand + "-") != std::string::npos || label.find("-" + brand) != std::string::npos) {
        out.push_back({labels[i]->id, brand});
        break;
      }
    }
  }
  return out;
}

std::vector<RuleMatch> detect_userinfo(const ParsedUrl& url, std::span<const std::string>) {
  if (!url.has(ComponentId{ComponentKind::kUserInfo, 0})) return {};
  return {RuleMatch{ComponentId{ComponentKind::kUserInfo, 0}, {}}};
}

std::vector<RuleMatch> detect_brand_in_subdomain(const ParsedUrl& url, std::span<const std::string> brands) {
  auto registered = url.registered_label_index();
  if (!registered) return {};
  auto labels = url.host_labels();
  std::string owner = to_lower(labels[*registered]->text);
  std::vector<RuleMatch> out;
  for (std::size_t i = 0; i < *registered; ++i) {
    std::string label = to_lower(labels[i]->text);
    for (const auto& brand : brands) {
      if (owner != brand && label.find(brand) != std::string::npos) {
        out.push_back({labels[i]->id, brand});
        break;
      }
    }
  }
  return out;
}

std::vector<RuleMatch> detect_excessive_subdomains(const ParsedUrl& url, std::span<const std::string>) {
  auto registered = url.registered_label_index();
  if (!registered || *registered <= 3) return {};
  return {RuleMatch{ComponentId{ComponentKind::kHostLabel, 0}, {}}};
}

std::vector<RuleMatch> detect_brand_misspelled(const ParsedUrl& url, std::span<const std::string> brands) {
  auto labels = url.host_labels();
  const std::size_t last = url.registered_label_index().value_or(labels.empty() ? 0 : labels.size() - 1);
  std::vector<RuleMatch> out;
  for (std::size_t i = 0; i < labels.size() && i <= last; ++i) {
    std::string label = to_lower(labels[i]->text);
    for (const auto& brand : brands) {
      if (edit_distance(label, brand) == 1) {
        out.push_back({labels[i]->id, brand});
        break;
      }
    }
  }
  return out;
}

RuleSet make_builtin() {
  RuleSet set;
  set.add(Rule{
      "R1", "ip_address_host", 3,
      "The host \"{text}\" is a bare IP address instead of a company name. " + std::string(kNumbersSentence) + " " +
          std::string(kNumbersExample),
      "website addresses associated with numbers in the front are generally scams", true, detect_ip_host});
  set.add(Rule{"R2", "numeric_host_prefix", 2,
               "The address starts with the number \"{text}\". " + std::string(kNumbersSentence) + " " +
                   std::string(kNumbersExample),
               "legitimate websites usually do not have numbers at the beginning of their URLs", true,
               detect_numeric_prefix});
  set.add(Rule{"R3", "brand_hyphen", 2,
               "\"{text}\" glues the company name {brand} to other words with a hyphen. A company name followed "
               "by a hyphen in a URL is generally a scam.",
               "a company name followed by a hyphen in a URL is generally a scam", true, detect_brand_hyphen});
  set.add(Rule{"R4", "userinfo_present", 3,
               "Everything before the \"@\" sign (\"{text}\") is ignored when the page loads. The site you really "
               "visit is the one after the \"@\".",
               "a URL with an @ sign takes you to whatever comes after the @", false, detect_userinfo});
  set.add(Rule{"R5", "brand_in_subdomain", 2,
               "\"{text}\" puts the name {brand} in front of somebody else's domain. The owner of a site is the "
               "name right before its ending, not a name further left.",
               "check the name right before the ending; a company name further left is only decoration", false,
               detect_brand_in_subdomain});
  set.add(Rule{"R6", "excessive_subdomains", 1,
               "This address stacks many subdomains, starting with \"{text}\", in front of the real domain to bury "
               "it.",
               "long chains of dots in front of the domain are used to hide where a link really goes", false,
               detect_excessive_subdomains});
  set.add(Rule{"R7", "brand_misspelled", 2,
               "\"{text}\" is one letter away from {brand}. Look-alike spellings are a common trick.",
               "read the company name letter by letter; scammers swap, add or drop a single letter", false,
               detect_brand_misspelled});
  return set;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::kPhishing ? "Phishing" : "Legitimate";
}

void RuleSet::add(Rule rule) {
  if (rule.severity < 1 || rule.severity > 3) {
    throw std::invalid_argument("rule " + rule.id + ": severity must be 1..3");
  }
  if (find(rule.id) || find(rule.name)) throw std::invalid_argument("duplicate rule " + rule.id);
  rules_.push_back(std::move(rule));
}

const Rule* RuleSet::find(std::string_view id_or_name) const {
  for (const auto& rule : rules_) {
    if (rule.id == id_or_name || rule.name == id_or_name) return &rule;
  }
  return nullptr;
}

RuleSet RuleSet::without(std::string_view id_or_name) const {
  RuleSet out;
  for (const auto& rule : rules_) {
    if (rule.id != id_or_name && rule.name != id_or_name) out.rules_.push_back(rule);
  }
  return out;
}

const RuleSet& builtin_ruleset() {
  static const RuleSet rules = make_builtin();
  return rules;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::string render_explanation(const Rule& rule, std::string_view component_text, std::string_view brand) {
  std::string out;
  std::string_view tmpl = rule.description;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.substr(i, 6) == "{text}") {
      out += component_text;
      i += 6;
    } else if (tmpl.substr(i, 7) == "{brand}") {
      out += brand;
      i += 7;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

AnalysisReport analyze(const ParsedUrl& url, const RuleSet& rules, std::span<const std::string> brands) {
  AnalysisReport report;
  for (const auto& rule : rules) {
    std::vector<ComponentId> seen;
    for (const auto& match : rule.detect(url, brands)) {
      if (std::find(seen.begin(), seen.end(), match.component) != seen.end()) continue;
      seen.push_back(match.component);
      const Component* component = url.find(match.component);
      if (!component) continue;
      report.findings.push_back(Finding{rule.id, rule.severity, component->id, component->span,
                                        render_explanation(rule, component->text, match.brand)});
    }
  }
  std::stable_sort(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
    if (a.severity != b.severity) return a.severity > b.severity;
    return a.span.start < b.span.start;
  });
  if (!report.findings.empty()) {
    report.verdict = Verdict::kPhishing;
    report.primary_finding = report.findings.front();
  }
  return report;
}

PickGrade grade_component_pick(const AnalysisReport& report, const ComponentId& pick) {
  if (report.verdict != Verdict::kPhishing) throw NotPhishing();
  for (const auto& f : report.findings) {
    if (f.component == pick) return PickGrade::kCorrect;
  }
  return PickGrade::kIncorrect;
}

}  // namespace phishpond
