#ifndef WIKIDASH_URL_H_
#define WIKIDASH_URL_H_

#include <optional>
#include <string>
#include <string_view>

namespace wikidash {

// Components of an absolute URL. Only the pieces the engine needs.
struct UrlParts {
  std::string scheme;     // lowercased, "http" or "https"
  std::string host;       // lowercased
  int port = 0;           // explicit or scheme default
  std::string path;       // begins with "/" (or is "/")
  std::string query;      // without the leading "?"
  std::string fragment;   // without the leading "#"
};

// Parses an absolute http(s) URL. Returns nullopt for anything else.
std::optional<UrlParts> ParseHttpUrl(std::string_view url);

// True if url is an absolute http or https URL with a non-empty host.
bool IsAbsoluteHttpUrl(std::string_view url);

// Host of an absolute URL, lowercased; empty when url is not absolute http(s).
std::string HostOf(std::string_view url);

// Percent-encodes every byte outside the RFC 3986 unreserved set.
std::string PercentEncode(std::string_view text);

// Form encoding for application/x-www-form-urlencoded bodies and query
// strings: unreserved bytes kept, everything else percent-encoded.
inline std::string FormEncode(std::string_view text) {
  return PercentEncode(text);
}

// Decodes %XX escapes once. Malformed escapes are kept verbatim.
std::string PercentDecode(std::string_view text);

// Encodes a page title the way MediaWiki builds its own links: spaces become
// underscores and a small set of punctuation (":", "/", ",", ...) stays
// unescaped.
std::string EncodeWikiTitle(std::string_view title);

// Strips trailing "/" characters after the path, for allowlist comparison.
std::string NormalizeEndpointUrl(std::string_view url);

}  // namespace wikidash

#endif  // WIKIDASH_URL_H_
