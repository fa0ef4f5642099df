#include "wikidash/url.h"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace wikidash {

namespace {

bool IsUnreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

void AppendEscaped(std::string &out, unsigned char c) {
  static const char kHex[] = "0123456789ABCDEF";
  out.push_back('%');
  out.push_back(kHex[c >> 4]);
  out.push_back(kHex[c & 0x0f]);
}

}  // namespace

std::optional<UrlParts> ParseHttpUrl(std::string_view url) {
  auto colon = url.find("://");
  if (colon == std::string_view::npos) return std::nullopt;
  UrlParts parts;
  parts.scheme = Lower(url.substr(0, colon));
  if (parts.scheme != "http" && parts.scheme != "https") return std::nullopt;

  std::string_view rest = url.substr(colon + 3);
  auto authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  rest = authority_end == std::string_view::npos ? std::string_view()
                                                 : rest.substr(authority_end);

  // Userinfo is never legitimate in configured endpoints; refuse it so that
  // "https://trusted@evil.example" cannot masquerade as a trusted host.
  if (authority.find('@') != std::string_view::npos) return std::nullopt;
  if (authority.empty()) return std::nullopt;

  std::string_view host = authority;
  parts.port = parts.scheme == "https" ? 443 : 80;
  if (!authority.empty() && authority.front() == '[') {
    auto close = authority.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    host = authority.substr(0, close + 1);
    authority = authority.substr(close + 1);
    if (!authority.empty() && authority.front() != ':') return std::nullopt;
  } else {
    auto port_colon = authority.rfind(':');
    host = authority.substr(0, port_colon);
    authority = port_colon == std::string_view::npos
                    ? std::string_view()
                    : authority.substr(port_colon);
  }
  if (!authority.empty()) {
    std::string_view port = authority.substr(1);
    if (port.empty() || port.size() > 5) return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc() || ptr != port.data() + port.size() || value <= 0 ||
        value > 65535) {
      return std::nullopt;
    }
    parts.port = value;
  }
  if (host.empty()) return std::nullopt;
  for (char c : host) {
    if (std::isspace(static_cast<unsigned char>(c))) return std::nullopt;
  }
  parts.host = Lower(host);

  auto hash = rest.find('#');
  if (hash != std::string_view::npos) {
    parts.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  auto question = rest.find('?');
  if (question != std::string_view::npos) {
    parts.query = std::string(rest.substr(question + 1));
    rest = rest.substr(0, question);
  }
  parts.path = rest.empty() ? "/" : std::string(rest);
  return parts;
}

bool IsAbsoluteHttpUrl(std::string_view url) {
  return ParseHttpUrl(url).has_value();
}

std::string HostOf(std::string_view url) {
  auto parts = ParseHttpUrl(url);
  return parts ? parts->host : std::string();
}

std::string PercentEncode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (IsUnreserved(c)) {
      out.push_back(ch);
    } else {
      AppendEscaped(out, c);
    }
  }
  return out;
}

std::string PercentDecode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      int hi = HexValue(text[i + 1]);
      int lo = HexValue(text[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

std::string EncodeWikiTitle(std::string_view title) {
  // Same safe set as MediaWiki's wfUrlencode.
  static constexpr std::string_view kSafe = ";@$!*(),/~:";
  std::string out;
  out.reserve(title.size());
  for (char ch : title) {
    auto c = static_cast<unsigned char>(ch);
    if (ch == ' ') {
      out.push_back('_');
    } else if (IsUnreserved(c) || kSafe.find(ch) != std::string_view::npos) {
      out.push_back(ch);
    } else {
      AppendEscaped(out, c);
    }
  }
  return out;
}

std::string NormalizeEndpointUrl(std::string_view url) {
  std::string out(url);
  while (!out.empty() && out.back() == '/') {
    // Keep the slash of "https://host/" only if nothing but the scheme is left.
    if (out.size() >= 3 && out.compare(out.size() - 3, 3, "://") == 0) break;
    out.pop_back();
  }
  return out;
}

}  // namespace wikidash
