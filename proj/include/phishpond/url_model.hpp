#pragma once

// URL decomposition with exact byte spans.
//
// Every component of a parsed URL remembers the half-open byte range it was
// cut from, so a UI click (a byte offset) can be mapped back to the component
// and a rule finding can point at exactly the text it incriminates. Nothing is
// decoded or normalized: spans always index into the raw input.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phishpond {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - start; }
  bool contains(std::size_t offset) const { return offset >= start && offset < end; }
  std::string_view slice(std::string_view raw) const { return raw.substr(start, end - start); }

  friend bool operator==(const Span&, const Span&) = default;
};

enum class ComponentKind {
  kScheme,
  kUserInfo,
  kHostLabel,
  kIPv4Host,
  kPort,
  kPathSegment,
  kQuery,
  kFragment,
};

std::string_view to_string(ComponentKind kind);
std::optional<ComponentKind> component_kind_from_string(std::string_view name);

struct ComponentId {
  ComponentKind kind = ComponentKind::kScheme;
  std::size_t index = 0;  // ordinal within kind, contiguous from 0

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;
};

// "HostLabel(2)", "IPv4Host", ...
std::string describe(const ComponentId& id);

struct Component {
  ComponentId id;
  Span span;
  std::string text;

  friend bool operator==(const Component&, const Component&) = default;
};

enum class HostKind { kIPv4Literal, kRegisteredName };

// A small public-suffix table. The default table holds the suffixes the
// bundled content relies on; add() extends it for packs that need more.
class SuffixList {
 public:
  static const SuffixList& defaults();

  SuffixList() = default;
  explicit SuffixList(std::vector<std::string> suffixes);

  void add(std::string suffix);
  bool contains(std::string_view suffix) const;
  const std::vector<std::string>& entries() const { return suffixes_; }

 private:
  std::vector<std::string> suffixes_;
};

class ParsedUrl {
 public:
  const std::string& raw() const { return raw_; }
  const std::vector<Component>& components() const { return components_; }
  HostKind host_kind() const { return host_kind_; }
  const std::optional<std::string>& registered_domain() const { return registered_domain_; }

  // Host labels in source order (empty for IPv4 hosts).
  std::vector<const Component*> host_labels() const;
  // Index of the first host label belonging to the registered domain. Labels
  // with a smaller index are subdomains. Empty when there is no registered
  // domain.
  std::optional<std::size_t> registered_label_index() const { return registered_label_index_; }
  // The host as a whole (IPv4 literal or the dotted label run).
  Span host_span() const { return host_span_; }

  const Component* find(const ComponentId& id) const;
  bool has(const ComponentId& id) const { return find(id) != nullptr; }

  // The bytes between consecutive components (and before the first and after
  // the last). gaps().size() == components().size() + 1, and interleaving the
  // gaps with component texts reproduces raw().
  std::vector<std::string_view> gaps() const;

  friend bool operator==(const ParsedUrl&, const ParsedUrl&) = default;

 private:
  friend ParsedUrl parse_url(std::string_view raw, const SuffixList& suffixes);

  std::string raw_;
  std::vector<Component> components_;
  HostKind host_kind_ = HostKind::kRegisteredName;
  Span host_span_;
  std::optional<std::string> registered_domain_;
  std::optional<std::size_t> registered_label_index_;
};

class MalformedUrl : public std::runtime_error {
 public:
  MalformedUrl(std::size_t offset, const std::string& reason);
  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

class OffsetOutOfRange : public std::out_of_range {
 public:
  OffsetOutOfRange(std::size_t offset, std::size_t length);
};

// Accepts absolute http/https URLs. Throws MalformedUrl naming the offending
// byte offset.
ParsedUrl parse_url(std::string_view raw, const SuffixList& suffixes = SuffixList::defaults());

// Public suffix plus one label, lowercased. Empty for IPv4 hosts or hosts not
// under a known suffix.
std::optional<std::string> registered_domain(const ParsedUrl& url);

// Component whose span contains offset, or nothing if offset is on a
// delimiter. Throws OffsetOutOfRange if offset >= raw length.
std::optional<ComponentId> component_at(const ParsedUrl& url, std::size_t offset);

// Four dot-separated decimal octets, each 0..255.
bool is_ipv4_literal(std::string_view host);

std::string to_lower(std::string_view text);

}  // namespace phishpond
