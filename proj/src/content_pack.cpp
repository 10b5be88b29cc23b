#include "phishpond/content_pack.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "phishpond/json_codec.hpp"

namespace phishpond {

namespace {

const std::vector<std::string> kHostWords = {
    "secure", "login",  "verify",  "account", "update", "support", "online", "service", "banking", "signin",
    "portal", "billing", "confirm", "wallet",  "alert",  "access",  "center", "member",  "rewards", "safety",
};

const std::vector<std::string> kPathWords = {
    "login", "signin", "verify", "account", "update", "index.html", "webscr", "session",
    "auth",  "confirm", "billing", "security", "home",   "profile",    "reset",  "statement",
};

const std::vector<std::string> kLegitSubdomains = {"www", "www", "online", "my"};

// Legitimate brand sites stay on commercial suffixes.
const std::vector<std::string> kLegitSuffixes = {"com", "co.uk", "com.au", "net"};

constexpr std::string_view kLegitimateHint =
    "find the name right before the ending (.com, .co.uk, ...) and check whether anything is glued to it, "
    "misspelled, or stacked in front of it";

constexpr int kMaxAttempts = 256;

std::string trim_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

bool is_valid_brand(const std::string& brand) { return !brand.empty() && to_lower(brand) == brand; }

void parse_header(const Json& j, ContentPack& pack) {
  if (!j.is_object()) throw JsonSchemaError("header must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "version" && key != "brands") throw JsonSchemaError("unknown header field '" + key + "'");
  }
  for (const char* key : {"name", "version", "brands"}) {
    if (!j.contains(key)) throw JsonSchemaError(std::string("header missing '") + key + "'");
  }
  if (!j["name"].is_string()) throw JsonSchemaError("header 'name' must be a string");
  if (!j["version"].is_string()) throw JsonSchemaError("header 'version' must be a string");
  if (!j["brands"].is_array()) throw JsonSchemaError("header 'brands' must be an array");
  pack.name = j["name"].get<std::string>();
  pack.version = j["version"].get<std::string>();
  for (const auto& b : j["brands"]) {
    if (!b.is_string() || !is_valid_brand(b.get<std::string>())) {
      throw JsonSchemaError("brands must be non-empty lowercase strings");
    }
    pack.brands.push_back(b.get<std::string>());
  }
}

// Returns the reason the item is invalid, or nothing.
std::optional<std::string> check_item(const PackItem& item) {
  ParsedUrl url;
  try {
    url = parse_url(item.url);
  } catch (const MalformedUrl& e) {
    return std::string("url does not parse: ") + e.what();
  }
  if (item.difficulty < 1 || item.difficulty > 3) return "difficulty must be 1..3";
  if (item.label == Label::kLegitimate && !item.phish_components.empty()) {
    return "legitimate item lists phish_components";
  }
  if (item.label == Label::kPhishing && item.phish_components.empty()) {
    return "phishing item has no phish_components";
  }
  for (const auto& id : item.phish_components) {
    if (!url.has(id)) return "phish component " + describe(id) + " does not exist in the url";
  }
  if (item.brand && !is_valid_brand(*item.brand)) return "brand must be a non-empty lowercase string";
  return std::nullopt;
}

// URL assembly for generated items.
struct Recipe {
  bool ip_host = false;
  bool numeric_prefix = false;
  bool brand_hyphen = false;
  bool userinfo = false;
  bool brand_subdomain = false;
  bool many_subdomains = false;
  bool misspelled = false;
};

void enable(Recipe& recipe, std::string_view rule_id) {
  if (rule_id == "R1") recipe.ip_host = true;
  else if (rule_id == "R2") recipe.numeric_prefix = true;
  else if (rule_id == "R3") recipe.brand_hyphen = true;
  else if (rule_id == "R4") recipe.userinfo = true;
  else if (rule_id == "R5") recipe.brand_subdomain = true;
  else if (rule_id == "R6") recipe.many_subdomains = true;
  else if (rule_id == "R7") recipe.misspelled = true;
}

const std::map<std::string, std::vector<std::string>>& compatible_extras() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"R1", {"R4"}},
      {"R2", {"R3", "R4", "R5", "R6", "R7"}},
      {"R3", {"R2", "R4", "R5", "R6"}},
      {"R4", {"R1", "R2", "R3", "R5", "R6", "R7"}},
      {"R5", {"R2", "R3", "R4", "R6", "R7"}},
      {"R6", {"R2", "R3", "R4", "R5", "R7"}},
      {"R7", {"R2", "R4", "R5", "R6"}},
  };
  return table;
}

std::string misspell(Rng& rng, const std::string& brand) {
  while (true) {
    std::string out = brand;
    const auto letter = static_cast<char>('a' + rng.below(26));
    switch (rng.below(3)) {
      case 0:
        out[rng.below(out.size())] = letter;
        break;
      case 1:
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(rng.below(out.size() + 1)), letter);
        break;
      default:
        if (out.size() < 2) continue;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(rng.below(out.size())));
        break;
    }
    if (edit_distance(out, brand) == 1) return out;
  }
}

std::string two_words(Rng& rng) {
  const std::string& first = rng.pick(kHostWords);
  std::string second = rng.pick(kHostWords);
  while (second == first) second = rng.pick(kHostWords);
  return first + second;
}

std::string hex_token(Rng& rng, std::size_t length) {
  static constexpr std::string_view kHex = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out += kHex[rng.below(16)];
  return out;
}

std::string suffix_for(Rng& rng) { return rng.pick(SuffixList::defaults().entries()); }

std::string phishing_path(Rng& rng, const std::string& brand, int difficulty, bool dotted_path_style) {
  std::string out;
  if (dotted_path_style) {
    out = "/.www." + brand + ".co.uk";
  } else {
    const auto segments = difficulty == 1 ? 1 : difficulty == 2 ? rng.between(1, 2) : rng.between(3, 5);
    for (std::int64_t i = 0; i < segments; ++i) {
      std::string segment = rng.pick(kPathWords);
      if (difficulty == 3 && rng.chance(0.4)) {
        const std::vector<std::string> decoys = {"www." + brand + ".com", brand, ".www." + brand + ".co.uk",
                                                 brand + "-login"};
        segment = rng.pick(decoys);
      }
      out += "/" + segment;
    }
  }
  if (difficulty == 2 && rng.chance(0.5)) {
    out += "?id=" + std::to_string(rng.between(1000, 99999));
  } else if (difficulty == 3 && rng.chance(0.7)) {
    out += "?session=" + hex_token(rng, 8) + "&ref=" + brand;
  }
  return out;
}

std::string legitimate_path(Rng& rng, int difficulty) {
  std::string out;
  const auto segments = difficulty == 1 ? rng.between(0, 1) : difficulty == 2 ? rng.between(1, 2) : rng.between(2, 4);
  for (std::int64_t i = 0; i < segments; ++i) out += "/" + rng.pick(kPathWords);
  if (segments == 0) out = "/";
  if (difficulty >= 2 && rng.chance(0.5)) out += "?ref=" + hex_token(rng, 6);
  if (difficulty == 3 && rng.chance(0.3)) out += "#main";
  return out;
}

std::string build_phishing_url(Rng& rng, const std::string& brand, const Recipe& recipe, int difficulty,
                               bool primary_ip) {
  std::string url = rng.chance(0.5) ? "http://" : "https://";
  if (recipe.userinfo) {
    const std::vector<std::string> fronts = {"www." + brand + ".com", brand + ".com", brand};
    url += rng.pick(fronts) + "@";
  }
  if (recipe.ip_host) {
    url += std::to_string(rng.between(11, 223));
    for (int i = 0; i < 3; ++i) url += "." + std::to_string(rng.between(0, 255));
  } else {
    std::vector<std::string> subdomains;
    if (recipe.brand_subdomain) {
      if (difficulty > 1 && rng.chance(0.5)) subdomains.push_back("www");
      subdomains.push_back(brand);
    }
    if (recipe.many_subdomains) {
      const auto target = 4 + rng.below(2);
      while (subdomains.size() < target) subdomains.push_back(rng.pick(kHostWords));
    }
    if (recipe.numeric_prefix) {
      subdomains.insert(subdomains.begin(), std::to_string(rng.between(1, 999)) + rng.pick(kHostWords));
    }
    std::string registrable;
    if (recipe.misspelled) {
      registrable = misspell(rng, brand);
    } else if (recipe.brand_hyphen) {
      registrable = rng.chance(0.5) ? brand + "-" + rng.pick(kHostWords) : rng.pick(kHostWords) + "-" + brand;
    } else {
      registrable = two_words(rng);
    }
    for (const auto& s : subdomains) url += s + ".";
    url += registrable + "." + suffix_for(rng);
  }
  if (difficulty == 3 && rng.chance(0.25)) url += ":" + std::to_string(rng.pick(std::vector<int>{8080, 8443, 81}));
  url += phishing_path(rng, brand, difficulty, primary_ip && difficulty < 3 && rng.chance(0.5));
  return url;
}

std::string build_legitimate_url(Rng& rng, const std::string& brand, int difficulty) {
  return "https://" + rng.pick(kLegitSubdomains) + "." + brand + "." + rng.pick(kLegitSuffixes) +
         legitimate_path(rng, difficulty);
}

std::set<std::string> fired_rules(const AnalysisReport& report) {
  std::set<std::string> out;
  for (const auto& f : report.findings) out.insert(f.rule_id);
  return out;
}

std::vector<ComponentId> fired_components(const AnalysisReport& report) {
  std::vector<ComponentId> out;
  for (const auto& f : report.findings) out.push_back(f.component);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string_view to_string(Label label) { return label == Label::kPhishing ? "phishing" : "legitimate"; }

std::optional<Label> label_from_string(std::string_view text) {
  if (text == "phishing") return Label::kPhishing;
  if (text == "legitimate") return Label::kLegitimate;
  return std::nullopt;
}

std::vector<std::string> analysis_brands(const ContentPack& pack, const PackItem& item) {
  std::vector<std::string> brands = pack.brands;
  if (item.brand && std::find(brands.begin(), brands.end(), *item.brand) == brands.end()) {
    brands.push_back(*item.brand);
  }
  return brands;
}

std::string PackError::message() const {
  switch (kind) {
    case PackErrorKind::kParseError:
      return "line " + std::to_string(line) + ": parse error: " + reason;
    case PackErrorKind::kInvariantViolation:
      return "line " + std::to_string(line) + ": invalid item: " + reason;
    case PackErrorKind::kEmptyTier:
      return "no " + std::string(to_string(label)) + " items at difficulty " + std::to_string(difficulty);
  }
  return reason;
}

PackLoadResult load_pack(std::istream& source) {
  PackLoadResult result;
  ContentPack pack;
  bool header_seen = false;
  std::map<std::string, std::size_t> first_line_of_url;
  std::string line;
  std::size_t line_number = 0;

  while (std::getline(source, line)) {
    ++line_number;
    line = trim_line(std::move(line));
    if (is_blank(line)) continue;

    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      result.errors.push_back({PackErrorKind::kParseError, line_number, 0, Label::kLegitimate, e.what()});
      if (!header_seen) header_seen = true;
      continue;
    }

    if (!header_seen) {
      header_seen = true;
      try {
        parse_header(j, pack);
      } catch (const JsonSchemaError& e) {
        result.errors.push_back({PackErrorKind::kParseError, line_number, 0, Label::kLegitimate, e.what()});
      }
      continue;
    }

    PackItem item;
    try {
      item = j.get<PackItem>();
    } catch (const std::exception& e) {
      result.errors.push_back({PackErrorKind::kParseError, line_number, 0, Label::kLegitimate, e.what()});
      continue;
    }
    if (auto reason = check_item(item)) {
      result.errors.push_back({PackErrorKind::kInvariantViolation, line_number, 0, Label::kLegitimate, *reason});
      continue;
    }
    if (auto [it, inserted] = first_line_of_url.emplace(item.url, line_number); !inserted) {
      result.errors.push_back({PackErrorKind::kInvariantViolation, line_number, 0, Label::kLegitimate,
                               "duplicate url (first on line " + std::to_string(it->second) + ")"});
      continue;
    }
    pack.items.push_back(std::move(item));
  }

  if (!header_seen) {
    result.errors.push_back({PackErrorKind::kParseError, 1, 0, Label::kLegitimate, "missing header line"});
    return result;
  }

  for (int difficulty = 1; difficulty <= 3; ++difficulty) {
    for (Label label : {Label::kPhishing, Label::kLegitimate}) {
      const bool present = std::any_of(pack.items.begin(), pack.items.end(), [&](const PackItem& item) {
        return item.difficulty == difficulty && item.label == label;
      });
      if (!present) result.errors.push_back({PackErrorKind::kEmptyTier, 0, difficulty, label, "empty tier"});
    }
  }

  if (result.errors.empty()) result.pack = std::move(pack);
  return result;
}

PackLoadResult load_pack_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    PackLoadResult result;
    result.errors.push_back({PackErrorKind::kParseError, 0, 0, Label::kLegitimate, "cannot open " + path});
    return result;
  }
  return load_pack(in);
}

void write_pack(const ContentPack& pack, std::ostream& sink) {
  Json header;
  header["name"] = pack.name;
  header["version"] = pack.version;
  header["brands"] = pack.brands;
  sink << header.dump() << '\n';
  for (const auto& item : pack.items) sink << Json(item).dump() << '\n';
}

ValidationReport validate_pack(const ContentPack& pack, const RuleSet& rules) {
  ValidationReport report;
  for (std::size_t i = 0; i < pack.items.size(); ++i) {
    const PackItem& item = pack.items[i];
    const auto brands = analysis_brands(pack, item);
    AnalysisReport analysis = analyze(parse_url(item.url), rules, brands);
    auto warn = [&](std::string message) {
      report.warnings.push_back(PackWarning{i, i + 2, item.url, std::move(message)});
    };
    if (item.label == Label::kPhishing) {
      const bool confirmed = std::any_of(analysis.findings.begin(), analysis.findings.end(), [&](const Finding& f) {
        return std::find(item.phish_components.begin(), item.phish_components.end(), f.component) !=
               item.phish_components.end();
      });
      if (!confirmed) warn("DivergesFromRules: no rule finding targets the labeled phish components");
    } else if (!analysis.findings.empty()) {
      warn("DivergesFromRules: labeled legitimate but " + analysis.findings.front().rule_id + " fires on " +
           describe(analysis.findings.front().component));
    }
  }
  return report;
}

PackItem generate_item(Rng& rng, std::string_view brand_view, std::string_view rule_id, int difficulty,
                       const RuleSet& rules) {
  const std::string brand(brand_view);
  if (brand.empty()) throw std::invalid_argument("brand must be non-empty");
  if (difficulty < 1 || difficulty > 3) throw std::invalid_argument("difficulty must be 1..3");
  const bool legitimate = rule_id == kLegitimateRule;
  const Rule* main_rule = legitimate ? nullptr : rules.find(rule_id);
  if (!legitimate && (!main_rule || !compatible_extras().contains(main_rule->id))) throw UnknownRule(rule_id);

  const std::vector<std::string> brands = {to_lower(brand)};
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    PackItem item;
    item.difficulty = difficulty;
    item.brand = brands.front();
    if (legitimate) {
      item.label = Label::kLegitimate;
      item.url = build_legitimate_url(rng, brands.front(), difficulty);
      item.hint = std::string(kLegitimateHint);
      if (analyze(parse_url(item.url), rules, brands).findings.empty()) return item;
      continue;
    }

    Recipe recipe;
    enable(recipe, main_rule->id);
    std::string extra;
    if (difficulty == 3) {
      extra = rng.pick(compatible_extras().at(main_rule->id));
      enable(recipe, extra);
    }
    item.label = Label::kPhishing;
    item.url = build_phishing_url(rng, brands.front(), recipe, difficulty, main_rule->id == "R1");
    item.hint = main_rule->hint;

    const AnalysisReport report = analyze(parse_url(item.url), rules, brands);
    const auto fired = fired_rules(report);
    bool ok = fired.contains(main_rule->id);
    if (difficulty < 3) {
      for (const auto& id : fired) {
        ok = ok && (id == main_rule->id || (main_rule->id == "R1" && id == "R2"));
      }
    } else {
      ok = ok && fired.contains(extra);
    }
    if (!ok) continue;
    item.phish_components = fired_components(report);
    return item;
  }
  throw std::runtime_error("could not generate an item for brand '" + brand + "' and rule '" +
                           std::string(rule_id) + "'");
}

ContentPack generate_pack(const PackGenerationOptions& options) {
  if (options.brands.empty()) throw std::invalid_argument("at least one brand is required");
  if (options.count < 6) throw std::invalid_argument("count must be at least 6 to cover every tier");
  for (const auto& b : options.brands) {
    if (!is_valid_brand(b)) throw std::invalid_argument("brands must be non-empty lowercase strings");
  }

  // Tier rule pools: blatant single indicators, subtle single indicators, and
  // composed indicators.
  const std::array<std::vector<std::string>, 3> pools = {{
      {"R1", "R2", "R3", "R4"},
      {"R5", "R6", "R7"},
      {"R1", "R2", "R3", "R4", "R5", "R6", "R7"},
  }};

  ContentPack pack{options.name, options.version, options.brands, {}};
  Rng rng(options.seed);
  std::set<std::string> urls;
  const RuleSet& rules = builtin_ruleset();

  for (std::size_t i = 0; i < options.count; ++i) {
    const bool phishing = i % 2 == 0;
    const int difficulty = static_cast<int>((i / 2) % 3) + 1;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      const std::string& brand = rng.pick(options.brands);
      const std::string rule_id =
          phishing ? rng.pick(pools[static_cast<std::size_t>(difficulty - 1)]) : std::string(kLegitimateRule);
      PackItem item = generate_item(rng, brand, rule_id, difficulty, rules);
      if (urls.contains(item.url)) continue;
      // The item must also hold up against every other brand in the pack.
      const AnalysisReport report = analyze(parse_url(item.url), rules, analysis_brands(pack, item));
      if (fired_components(report) != item.phish_components) continue;
      urls.insert(item.url);
      pack.items.push_back(std::move(item));
      placed = true;
    }
    if (!placed) throw std::runtime_error("could not place item " + std::to_string(i));
  }
  return pack;
}

}  // namespace phishpond
