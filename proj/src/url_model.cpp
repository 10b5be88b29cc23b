#include "phishpond/url_model.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace phishpond {

namespace {

constexpr std::array<std::string_view, 8> kKindNames = {
    "Scheme", "UserInfo", "HostLabel", "IPv4Host", "Port", "PathSegment", "Query", "Fragment",
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

bool is_scheme_char(char c) { return is_alnum(c) || c == '+' || c == '-' || c == '.'; }

bool is_userinfo_char(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case '%':
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=': case ':':
      return true;
    default:
      return false;
  }
}

bool is_host_char(char c) { return is_alnum(c) || c == '-' || c == '_'; }

std::size_t find_first_of_from(std::string_view s, std::string_view set, std::size_t from) {
  auto pos = s.find_first_of(set, from);
  return pos == std::string_view::npos ? s.size() : pos;
}

}  // namespace

std::string_view to_string(ComponentKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<ComponentKind> component_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<ComponentKind>(i);
  }
  return std::nullopt;
}

std::string describe(const ComponentId& id) {
  std::string out(to_string(id.kind));
  if (id.kind == ComponentKind::kHostLabel || id.kind == ComponentKind::kPathSegment) {
    out += "(" + std::to_string(id.index) + ")";
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

const SuffixList& SuffixList::defaults() {
  static const SuffixList list({"com", "org", "net", "edu", "gov", "co.uk", "com.au"});
  return list;
}

SuffixList::SuffixList(std::vector<std::string> suffixes) {
  for (auto& s : suffixes) add(std::move(s));
}

void SuffixList::add(std::string suffix) {
  suffix = to_lower(suffix);
  if (!contains(suffix)) suffixes_.push_back(std::move(suffix));
}

bool SuffixList::contains(std::string_view suffix) const {
  return std::find(suffixes_.begin(), suffixes_.end(), suffix) != suffixes_.end();
}

MalformedUrl::MalformedUrl(std::size_t offset, const std::string& reason)
    : std::runtime_error("malformed URL at offset " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(reason) {}

OffsetOutOfRange::OffsetOutOfRange(std::size_t offset, std::size_t length)
    : std::out_of_range("offset " + std::to_string(offset) + " out of range for URL of length " +
                        std::to_string(length)) {}

bool is_ipv4_literal(std::string_view host) {
  std::size_t octets = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = host.find('.', pos);
    std::string_view part = host.substr(pos, dot == std::string_view::npos ? host.npos : dot - pos);
    if (part.empty() || part.size() > 3) return false;
    if (!std::all_of(part.begin(), part.end(), is_digit)) return false;
    unsigned value = 0;
    std::from_chars(part.data(), part.data() + part.size(), value);
    if (value > 255) return false;
    ++octets;
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return octets == 4;
}

std::vector<const Component*> ParsedUrl::host_labels() const {
  std::vector<const Component*> out;
  for (const auto& c : components_) {
    if (c.id.kind == ComponentKind::kHostLabel) out.push_back(&c);
  }
  return out;
}

const Component* ParsedUrl::find(const ComponentId& id) const {
  for (const auto& c : components_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<std::string_view> ParsedUrl::gaps() const {
  std::string_view raw = raw_;
  std::vector<std::string_view> out;
  out.reserve(components_.size() + 1);
  std::size_t cursor = 0;
  for (const auto& c : components_) {
    out.push_back(raw.substr(cursor, c.span.start - cursor));
    cursor = c.span.end;
  }
  out.push_back(raw.substr(cursor));
  return out;
}

ParsedUrl parse_url(std::string_view raw, const SuffixList& suffixes) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto byte = static_cast<unsigned char>(raw[i]);
    if (byte <= 0x20 || byte == 0x7F) throw MalformedUrl(i, "illegal character");
  }

  ParsedUrl url;
  url.raw_ = std::string(raw);
  auto push = [&](ComponentKind kind, std::size_t index, std::size_t start, std::size_t end) {
    url.components_.push_back(
        Component{ComponentId{kind, index}, Span{start, end}, std::string(raw.substr(start, end - start))});
  };

  // scheme "://"
  std::size_t pos = 0;
  while (pos < raw.size() && is_scheme_char(raw[pos])) ++pos;
  if (pos == 0 || !is_alpha(raw[0])) throw MalformedUrl(0, "missing scheme");
  if (pos >= raw.size() || raw[pos] != ':') throw MalformedUrl(pos, "missing scheme");
  std::string scheme = to_lower(raw.substr(0, pos));
  if (scheme != "http" && scheme != "https") throw MalformedUrl(0, "unsupported scheme '" + scheme + "'");
  if (raw.substr(pos + 1, 2) != "//") throw MalformedUrl(pos + 1, "expected '//' after scheme");
  push(ComponentKind::kScheme, 0, 0, pos);

  // authority
  const std::size_t authority_start = pos + 3;
  const std::size_t authority_end = find_first_of_from(raw, "/?#", authority_start);
  std::size_t host_start = authority_start;
  std::string_view authority = raw.substr(authority_start, authority_end - authority_start);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    for (std::size_t i = 0; i < at; ++i) {
      if (!is_userinfo_char(authority[i])) throw MalformedUrl(authority_start + i, "illegal character in userinfo");
    }
    if (at > 0) push(ComponentKind::kUserInfo, 0, authority_start, authority_start + at);
    host_start = authority_start + at + 1;
  }

  std::size_t host_end = authority_end;
  std::optional<std::size_t> port_start;
  if (auto colon = raw.substr(host_start, authority_end - host_start).find(':'); colon != std::string_view::npos) {
    host_end = host_start + colon;
    port_start = host_end + 1;
  }
  if (host_end == host_start) throw MalformedUrl(host_start, "empty host");

  std::string_view host = raw.substr(host_start, host_end - host_start);
  url.host_span_ = Span{host_start, host_end};
  if (is_ipv4_literal(host)) {
    url.host_kind_ = HostKind::kIPv4Literal;
    push(ComponentKind::kIPv4Host, 0, host_start, host_end);
  } else {
    url.host_kind_ = HostKind::kRegisteredName;
    std::size_t label_start = host_start;
    std::size_t index = 0;
    for (std::size_t i = host_start; i <= host_end; ++i) {
      if (i == host_end || raw[i] == '.') {
        if (i == label_start) throw MalformedUrl(i, "empty host label");
        push(ComponentKind::kHostLabel, index++, label_start, i);
        label_start = i + 1;
      } else if (!is_host_char(raw[i])) {
        throw MalformedUrl(i, "illegal character in host");
      }
    }
  }

  if (port_start) {
    std::string_view port = raw.substr(*port_start, authority_end - *port_start);
    if (port.empty()) throw MalformedUrl(*port_start, "empty port");
    for (std::size_t i = 0; i < port.size(); ++i) {
      if (!is_digit(port[i])) throw MalformedUrl(*port_start + i, "illegal character in port");
    }
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc() || value > 65535) throw MalformedUrl(*port_start, "port out of range");
    push(ComponentKind::kPort, 0, *port_start, authority_end);
  }

  // path, query, fragment
  std::size_t cursor = authority_end;
  if (cursor < raw.size() && raw[cursor] == '/') {
    const std::size_t path_end = find_first_of_from(raw, "?#", cursor);
    std::size_t index = 0;
    std::size_t seg_start = cursor + 1;
    for (std::size_t i = seg_start; i <= path_end; ++i) {
      if (i == path_end || raw[i] == '/') {
        if (i > seg_start) push(ComponentKind::kPathSegment, index++, seg_start, i);
        seg_start = i + 1;
      }
    }
    cursor = path_end;
  }
  if (cursor < raw.size() && raw[cursor] == '?') {
    const std::size_t query_end = find_first_of_from(raw, "#", cursor + 1);
    if (query_end > cursor + 1) push(ComponentKind::kQuery, 0, cursor + 1, query_end);
    cursor = query_end;
  }
  if (cursor < raw.size() && raw[cursor] == '#') {
    if (raw.size() > cursor + 1) push(ComponentKind::kFragment, 0, cursor + 1, raw.size());
    cursor = raw.size();
  }

  if (url.host_kind_ == HostKind::kRegisteredName) {
    auto labels = url.host_labels();
    // Longest matching suffix wins; a registered domain needs one label in
    // front of it.
    for (std::size_t first = 1; first < labels.size(); ++first) {
      std::string suffix;
      for (std::size_t i = first; i < labels.size(); ++i) {
        if (!suffix.empty()) suffix += '.';
        suffix += to_lower(labels[i]->text);
      }
      if (suffixes.contains(suffix)) {
        url.registered_label_index_ = first - 1;
        url.registered_domain_ = to_lower(labels[first - 1]->text) + "." + suffix;
        break;
      }
    }
  }
  return url;
}

std::optional<std::string> registered_domain(const ParsedUrl& url) { return url.registered_domain(); }

std::optional<ComponentId> component_at(const ParsedUrl& url, std::size_t offset) {
  if (offset >= url.raw().size()) throw OffsetOutOfRange(offset, url.raw().size());
  const auto& components = url.components();
  auto it = std::upper_bound(components.begin(), components.end(), offset,
                             [](std::size_t off, const Component& c) { return off < c.span.start; });
  if (it == components.begin()) return std::nullopt;
  --it;
  if (it->span.contains(offset)) return it->id;
  return std::nullopt;
}

}  // namespace phishpond
