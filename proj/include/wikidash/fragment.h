#ifndef WIKIDASH_FRAGMENT_H_
#define WIKIDASH_FRAGMENT_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wikidash {

// Wikidata item (Q) or lexeme (L) identifier.
class EntityId {
 public:
  enum class Prefix : char { kItem = 'Q', kLexeme = 'L' };

  EntityId(Prefix prefix, std::uint64_t number);

  // Parses "Q42" / "L2310". Returns nullopt on anything else, including
  // leading zeros, lowercase prefixes and numbers that overflow 64 bits.
  static std::optional<EntityId> Parse(std::string_view text);

  Prefix prefix() const { return prefix_; }
  std::uint64_t number() const { return number_; }

  std::string str() const;

  auto operator<=>(const EntityId &) const = default;

 private:
  Prefix prefix_;
  std::uint64_t number_;
};

struct AspectSegment {
  std::string aspect;
  std::vector<EntityId> ids;

  bool operator==(const AspectSegment &) const = default;
};

enum class RouteKind { kIndex, kAspectIndex, kItem, kFaceted };

const char *RouteKindName(RouteKind kind);

struct AspectRoute {
  std::vector<AspectSegment> segments;
  RouteKind kind = RouteKind::kIndex;

  // All identifiers in segment order.
  std::vector<EntityId> FlatIds() const;

  bool operator==(const AspectRoute &) const = default;
};

class MalformedFragment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a URI fragment such as "#venue/Q15817015/topic/Q2013". The leading
// "#" is optional. The fragment is percent-decoded once before splitting.
// Throws MalformedFragment on any input that is not a valid route.
AspectRoute ParseFragment(std::string_view fragment);

// Title of the wikipage holding the templates for a route, e.g.
// "Wikidata:Synia:venue-topic".
std::string TemplatePageTitle(const AspectRoute &route,
                              std::string_view namespace_prefix);

// Inverse of ParseFragment: "#a1/ID,ID/a2/ID", or "" for the index.
std::string CanonicalFragment(const AspectRoute &route);

}  // namespace wikidash

#endif  // WIKIDASH_FRAGMENT_H_
