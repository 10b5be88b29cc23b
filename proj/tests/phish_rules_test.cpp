#include "phishpond/phish_rules.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

namespace phishpond {
namespace {

using testing::kExampleUrl;

AnalysisReport run(std::string_view raw, std::vector<std::string> brands, const RuleSet& rules = builtin_ruleset()) {
  return analyze(parse_url(raw), rules, brands);
}

std::set<std::string> fired(const AnalysisReport& report) {
  std::set<std::string> ids;
  for (const auto& f : report.findings) ids.insert(f.rule_id);
  return ids;
}

TEST(RuleCatalog, IdsNamesSeverities) {
  const std::vector<std::tuple<std::string, std::string, int, bool>> want = {
      {"R1", "ip_address_host", 3, true},     {"R2", "numeric_host_prefix", 2, true},
      {"R3", "brand_hyphen", 2, true},        {"R4", "userinfo_present", 3, false},
      {"R5", "brand_in_subdomain", 2, false}, {"R6", "excessive_subdomains", 1, false},
      {"R7", "brand_misspelled", 2, false},
  };
  const RuleSet& rules = builtin_ruleset();
  ASSERT_EQ(rules.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const Rule& r = rules.rules()[i];
    EXPECT_EQ(r.id, std::get<0>(want[i]));
    EXPECT_EQ(r.name, std::get<1>(want[i]));
    EXPECT_EQ(r.severity, std::get<2>(want[i]));
    EXPECT_EQ(r.paper_anchored, std::get<3>(want[i]));
    EXPECT_EQ(rules.find(r.name), &r);
  }
}

TEST(RuleCatalog, TeachingTexts) {
  const RuleSet& rules = builtin_ruleset();
  EXPECT_EQ(rules.find("R1")->hint, "website addresses associated with numbers in the front are generally scams");
  EXPECT_EQ(rules.find("R3")->hint, "a company name followed by a hyphen in a URL is generally a scam");
  for (const char* id : {"R1", "R2"}) {
    const std::string& d = rules.find(id)->description;
    EXPECT_NE(d.find("Legitimate websites usually do not have numbers at the beginning of their URLs"),
              std::string::npos);
    EXPECT_NE(d.find("http://187.52.91.111/.www.hsbc.co.uk"), std::string::npos);
  }
}

TEST(RuleSet, RejectsDuplicatesAndBadSeverity) {
  RuleSet set = builtin_ruleset();
  Rule dup = *set.find("R1");
  EXPECT_THROW(set.add(dup), std::invalid_argument);
  dup.id = "R99";
  dup.name = "fresh";
  dup.severity = 4;
  EXPECT_THROW(set.add(dup), std::invalid_argument);
  dup.severity = 0;
  EXPECT_THROW(set.add(dup), std::invalid_argument);
  EXPECT_EQ(set.without("R3").size(), 6u);
  EXPECT_EQ(set.without("R3").find("brand_hyphen"), nullptr);
}

TEST(Analyze, ExampleUrl) {
  const AnalysisReport report = run(kExampleUrl, {"hsbc"});
  const std::size_t start = kExampleUrl.find("187.52.91.111");
  const Span host{start, start + std::string_view("187.52.91.111").size()};
  EXPECT_EQ(report.verdict, Verdict::kPhishing);
  ASSERT_EQ(report.findings.size(), 2u);
  EXPECT_EQ(report.findings[0].rule_id, "R1");
  EXPECT_EQ(report.findings[0].span, host);
  EXPECT_EQ(report.findings[0].component, (ComponentId{ComponentKind::kIPv4Host, 0}));
  EXPECT_EQ(report.findings[1].rule_id, "R2");
  EXPECT_EQ(report.findings[1].span, host);
  ASSERT_TRUE(report.primary_finding);
  EXPECT_EQ(report.primary_finding->rule_id, "R1");
  EXPECT_NE(report.primary_finding->explanation.find("187.52.91.111"), std::string::npos);
}

TEST(Analyze, GoogleSearchIsClean) {
  const AnalysisReport report = run("https://www.google.com/search?q=fish", {"google"});
  EXPECT_EQ(report.verdict, Verdict::kLegitimate);
  EXPECT_TRUE(report.findings.empty());
  EXPECT_FALSE(report.primary_finding);
}

TEST(Analyze, BrandHyphenSpanMatchesSubstringOracle) {
  const std::string raw = "http://hsbc-secure.com/verify";
  const AnalysisReport report = run(raw, {"hsbc"});
  ASSERT_EQ(report.verdict, Verdict::kPhishing);
  ASSERT_EQ(report.findings.size(), 1u);
  const Finding& f = report.findings[0];
  const std::size_t start = raw.find("hsbc-secure");
  EXPECT_EQ(start, 7u);
  EXPECT_EQ(f.rule_id, "R3");
  EXPECT_EQ(f.component, (ComponentId{ComponentKind::kHostLabel, 0}));
  EXPECT_EQ(f.span, (Span{start, start + 11}));
  EXPECT_EQ(f.span, (Span{7, 18}));
}

TEST(Analyze, EachRuleFiresOnItsShape) {
  struct Case {
    std::string url;
    std::string rule;
    ComponentId component;
  };
  const std::vector<Case> cases = {
      {"http://10.1.2.3/x", "R1", {ComponentKind::kIPv4Host, 0}},
      {"http://123bank.com/", "R2", {ComponentKind::kHostLabel, 0}},
      {"http://secure-paypal.net/", "R3", {ComponentKind::kHostLabel, 0}},
      {"http://paypal.com@evil.net/", "R4", {ComponentKind::kUserInfo, 0}},
      {"http://paypal.account.verify.net/", "R5", {ComponentKind::kHostLabel, 0}},
      {"http://a.b.c.d.example.com/", "R6", {ComponentKind::kHostLabel, 0}},
      {"http://www.paypa1.com/", "R7", {ComponentKind::kHostLabel, 1}},
  };
  for (const auto& c : cases) {
    const AnalysisReport report = run(c.url, {"paypal", "hsbc"});
    std::set<std::string> want{c.rule};
    if (c.rule == "R1") want.insert("R2");
    EXPECT_EQ(fired(report), want) << c.url;
    ASSERT_FALSE(report.findings.empty()) << c.url;
    EXPECT_EQ(report.findings[0].component, c.component) << c.url;
  }
}

TEST(Analyze, OwnBrandSubdomainsAreFine) {
  EXPECT_TRUE(run("https://online.paypal.com/myaccount", {"paypal"}).findings.empty());
  EXPECT_TRUE(run("https://a.b.c.paypal.com/", {"paypal"}).findings.empty());
  EXPECT_TRUE(run("https://paypal.paypal.com/", {"paypal"}).findings.empty());
  // A path mentioning the brand with a hyphen does not incriminate the host.
  EXPECT_TRUE(run("https://www.example.com/hsbc-login", {"hsbc"}).findings.empty());
}

TEST(Analyze, FindingsOrderedBySeverityThenStart) {
  const AnalysisReport report = run("http://paypa1.com@1.2.3.4/", {"paypal"});
  ASSERT_GE(report.findings.size(), 3u);
  for (std::size_t i = 1; i < report.findings.size(); ++i) {
    const Finding& a = report.findings[i - 1];
    const Finding& b = report.findings[i];
    EXPECT_TRUE(a.severity > b.severity || (a.severity == b.severity && a.span.start <= b.span.start));
  }
  EXPECT_EQ(report.primary_finding, report.findings.front());
}

TEST(Analyze, NumericPrefixCoversEveryIpHost) {
  for (const auto& raw : testing::random_urls(77, 2000)) {
    ParsedUrl url;
    try {
      url = parse_url(raw);
    } catch (const MalformedUrl&) {
      continue;
    }
    const auto ids = fired(analyze(url, builtin_ruleset(), std::vector<std::string>{"hsbc"}));
    if (ids.contains("R1")) EXPECT_TRUE(ids.contains("R2")) << raw;
  }
}

TEST(Analyze, RemovingRulesNeverAddsFindings) {
  const std::vector<std::string> brands = {"hsbc", "paypal"};
  for (const auto& raw : testing::random_urls(5, 1500)) {
    ParsedUrl url;
    try {
      url = parse_url(raw);
    } catch (const MalformedUrl&) {
      continue;
    }
    const AnalysisReport full = analyze(url, builtin_ruleset(), brands);
    for (const auto& rule : builtin_ruleset()) {
      const AnalysisReport subset = analyze(url, builtin_ruleset().without(rule.id), brands);
      for (const auto& f : subset.findings) {
        EXPECT_NE(std::find(full.findings.begin(), full.findings.end(), f), full.findings.end()) << raw;
      }
      if (full.verdict == Verdict::kLegitimate) EXPECT_EQ(subset.verdict, Verdict::kLegitimate) << raw;
    }
    EXPECT_EQ(analyze(url, builtin_ruleset(), brands), full);
  }
}

TEST(Grade, ExampleUrlPicks) {
  const AnalysisReport report = run(kExampleUrl, {"hsbc"});
  EXPECT_EQ(grade_component_pick(report, {ComponentKind::kIPv4Host, 0}), PickGrade::kCorrect);
  EXPECT_EQ(grade_component_pick(report, {ComponentKind::kPathSegment, 0}), PickGrade::kIncorrect);
  EXPECT_EQ(grade_component_pick(report, {ComponentKind::kScheme, 0}), PickGrade::kIncorrect);
  EXPECT_THROW(grade_component_pick(run("https://www.google.com/", {"google"}), {ComponentKind::kScheme, 0}),
               NotPhishing);
}

TEST(EditDistance, Basics) {
  EXPECT_EQ(edit_distance("paypal", "paypal"), 0u);
  EXPECT_EQ(edit_distance("paypa1", "paypal"), 1u);
  EXPECT_EQ(edit_distance("paypall", "paypal"), 1u);
  EXPECT_EQ(edit_distance("pypal", "paypal"), 1u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
}

TEST(RenderExplanation, ExpandsPlaceholders) {
  const Rule& r3 = *builtin_ruleset().find("R3");
  const std::string text = render_explanation(r3, "hsbc-secure", "hsbc");
  EXPECT_NE(text.find("\"hsbc-secure\""), std::string::npos);
  EXPECT_NE(text.find("company name hsbc"), std::string::npos);
  EXPECT_EQ(text.find('{'), std::string::npos);
}

}  // namespace
}  // namespace phishpond
