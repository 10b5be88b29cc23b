#pragma once

// Labeled URL corpus ("worms") that drives game sessions.
//
// Pack file format, UTF-8 JSON Lines:
//   line 1:  {"name": str, "version": str, "brands": [str, ...]}
//   line 2+: {"url": str, "label": "phishing"|"legitimate",
//             "phish_components": [{"kind": str, "index": int}, ...],
//             "difficulty": 1|2|3, "brand": str|null, "hint": str}
// Unknown fields are rejected. Blank lines are skipped but still counted.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishpond/phish_rules.hpp"
#include "phishpond/rng.hpp"
#include "phishpond/url_model.hpp"

namespace phishpond {

enum class Label { kPhishing, kLegitimate };

std::string_view to_string(Label label);
std::optional<Label> label_from_string(std::string_view text);

struct PackItem {
  std::string url;
  Label label = Label::kLegitimate;
  std::vector<ComponentId> phish_components;  // empty iff legitimate
  int difficulty = 1;                         // 1..3
  std::optional<std::string> brand;
  std::string hint;

  friend bool operator==(const PackItem&, const PackItem&) = default;
};

struct ContentPack {
  std::string name;
  std::string version;
  std::vector<std::string> brands;
  std::vector<PackItem> items;

  friend bool operator==(const ContentPack&, const ContentPack&) = default;
};

// Brands an item is analyzed against: the pack brands plus the item's own.
std::vector<std::string> analysis_brands(const ContentPack& pack, const PackItem& item);

enum class PackErrorKind { kParseError, kInvariantViolation, kEmptyTier };

struct PackError {
  PackErrorKind kind = PackErrorKind::kParseError;
  std::size_t line = 0;  // 1-based; 0 for pack-wide errors
  int difficulty = 0;    // EmptyTier only
  Label label = Label::kLegitimate;
  std::string reason;

  std::string message() const;
};

struct PackLoadResult {
  std::optional<ContentPack> pack;
  std::vector<PackError> errors;

  bool ok() const { return pack.has_value(); }
};

// Collects every error instead of stopping at the first one.
PackLoadResult load_pack(std::istream& source);
PackLoadResult load_pack_file(const std::string& path);

void write_pack(const ContentPack& pack, std::ostream& sink);

struct PackWarning {
  std::size_t item_index = 0;
  std::size_t line = 0;  // line the item occupies in the written pack
  std::string url;
  std::string message;
};

struct ValidationReport {
  std::vector<PackWarning> warnings;
  bool clean() const { return warnings.empty(); }
};

// Cross-checks each item's label against the rule engine. Divergences are
// warnings only; the pack label stays authoritative.
ValidationReport validate_pack(const ContentPack& pack, const RuleSet& rules);

class UnknownRule : public std::invalid_argument {
 public:
  explicit UnknownRule(std::string_view rule_id)
      : std::invalid_argument("unknown rule '" + std::string(rule_id) + "'") {}
};

inline constexpr std::string_view kLegitimateRule = "none";

// Builds one item whose URL fires rule_id (or nothing, for "none").
// Difficulty 1 and 2 items fire rule_id alone (plus numeric_host_prefix, which
// every IP host implies); difficulty 3 items add a second indicator and a
// longer decoy path. Deterministic in the generator state and arguments.
PackItem generate_item(Rng& rng, std::string_view brand, std::string_view rule_id, int difficulty,
                       const RuleSet& rules = builtin_ruleset());

struct PackGenerationOptions {
  std::string name = "generated";
  std::string version = "1";
  std::vector<std::string> brands = {"hsbc", "paypal", "amazon", "google"};
  std::size_t count = 36;
  std::uint64_t seed = 0;
};

// Items cycle through the six (difficulty, label) tiers so any count >= 6
// covers every tier. Generated packs validate without warnings against the
// builtin rules.
ContentPack generate_pack(const PackGenerationOptions& options);

}  // namespace phishpond
