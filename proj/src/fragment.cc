#include "wikidash/fragment.h"

#include <limits>

#include "wikidash/url.h"

namespace wikidash {

namespace {

bool IsAspectName(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u == 0x7f) {
      out += "\\x";
      out += "0123456789abcdef"[u >> 4];
      out += "0123456789abcdef"[u & 0x0f];
    } else {
      out.push_back(c);
    }
  }
  out += "\"";
  return out;
}

std::vector<EntityId> ParseIdList(std::string_view text) {
  std::vector<EntityId> ids;
  for (std::string_view item : Split(text, ',')) {
    auto id = EntityId::Parse(item);
    if (!id) {
      throw MalformedFragment("invalid entity identifier " + Quote(item));
    }
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace

EntityId::EntityId(Prefix prefix, std::uint64_t number)
    : prefix_(prefix), number_(number) {
  if (number == 0) throw std::invalid_argument("entity number must be positive");
}

std::optional<EntityId> EntityId::Parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  Prefix prefix;
  if (text[0] == 'Q') {
    prefix = Prefix::kItem;
  } else if (text[0] == 'L') {
    prefix = Prefix::kLexeme;
  } else {
    return std::nullopt;
  }
  if (text[1] == '0') return std::nullopt;
  std::uint64_t number = 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (char c : text.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    std::uint64_t digit = c - '0';
    if (number > (kMax - digit) / 10) return std::nullopt;
    number = number * 10 + digit;
  }
  return EntityId(prefix, number);
}

std::string EntityId::str() const {
  return static_cast<char>(prefix_) + std::to_string(number_);
}

const char *RouteKindName(RouteKind kind) {
  switch (kind) {
    case RouteKind::kIndex: return "index";
    case RouteKind::kAspectIndex: return "aspect-index";
    case RouteKind::kItem: return "item";
    case RouteKind::kFaceted: return "faceted";
  }
  return "unknown";
}

std::vector<EntityId> AspectRoute::FlatIds() const {
  std::vector<EntityId> ids;
  for (const auto &segment : segments) {
    ids.insert(ids.end(), segment.ids.begin(), segment.ids.end());
  }
  return ids;
}

AspectRoute ParseFragment(std::string_view fragment) {
  if (!fragment.empty() && fragment.front() == '#') fragment.remove_prefix(1);
  std::string decoded = PercentDecode(fragment);

  AspectRoute route;
  if (decoded.empty()) return route;

  std::vector<std::string_view> parts = Split(decoded, '/');
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw MalformedFragment("empty path segment");
  }

  for (size_t i = 0; i < parts.size(); i += 2) {
    std::string_view name = parts[i];
    if (!IsAspectName(name)) {
      if (EntityId::Parse(Split(name, ',').front())) {
        throw MalformedFragment("identifier " + Quote(name) +
                                " where an aspect name is expected");
      }
      throw MalformedFragment("invalid aspect name " + Quote(name));
    }
    AspectSegment segment;
    segment.aspect = std::string(name);
    if (i + 1 < parts.size()) segment.ids = ParseIdList(parts[i + 1]);
    route.segments.push_back(std::move(segment));
  }

  if (route.segments.size() == 1) {
    route.kind = route.segments[0].ids.empty() ? RouteKind::kAspectIndex
                                               : RouteKind::kItem;
  } else {
    // Trailing aspects without identifiers have no template naming rule.
    if (route.segments.back().ids.empty()) {
      throw MalformedFragment("aspect " + Quote(route.segments.back().aspect) +
                              " in a faceted route has no identifiers");
    }
    route.kind = RouteKind::kFaceted;
  }
  return route;
}

std::string TemplatePageTitle(const AspectRoute &route,
                              std::string_view namespace_prefix) {
  std::string title(namespace_prefix);
  switch (route.kind) {
    case RouteKind::kIndex:
      title += "index";
      break;
    case RouteKind::kAspectIndex:
      title += route.segments.at(0).aspect + "-index";
      break;
    case RouteKind::kItem:
      title += route.segments.at(0).aspect;
      break;
    case RouteKind::kFaceted:
      for (size_t i = 0; i < route.segments.size(); ++i) {
        if (i > 0) title += '-';
        title += route.segments[i].aspect;
      }
      break;
  }
  return title;
}

std::string CanonicalFragment(const AspectRoute &route) {
  std::string out;
  for (const auto &segment : route.segments) {
    out += out.empty() ? "#" : "/";
    out += segment.aspect;
    if (segment.ids.empty()) continue;
    out += '/';
    for (size_t i = 0; i < segment.ids.size(); ++i) {
      if (i > 0) out += ',';
      out += segment.ids[i].str();
    }
  }
  return out;
}

}  // namespace wikidash
