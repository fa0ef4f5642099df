#ifndef WIKIDASH_TEMPLATE_STORE_H_
#define WIKIDASH_TEMPLATE_STORE_H_

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wikidash/http.h"

namespace wikidash {

using TimePoint = std::chrono::system_clock::time_point;
using ClockFn = std::function<TimePoint()>;

// The wiki holding the template pages, e.g. base "https://www.wikidata.org/w"
// (the directory serving index.php) with prefix "Wikidata:Synia:".
struct WikiSource {
  std::string base_url;
  std::string namespace_prefix;

  // Throws std::invalid_argument when the invariants do not hold.
  void Validate() const;
};

// Network failure or a 5xx answer from the wiki.
class WikiUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The wiki answered with something other than a page or a 404.
class WikiProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw wikitext of a page, or nullopt when the page does not exist. The
// text is returned byte for byte as served. Read-only: only GET requests.
std::optional<std::string> FetchWikitext(HttpTransport &transport,
                                         const WikiSource &source,
                                         std::string_view title,
                                         std::chrono::milliseconds timeout);

// URL of the wiki's edit form for a page.
std::string CreateLink(const WikiSource &source, std::string_view title);

std::string RawPageUrl(const WikiSource &source, std::string_view title);

struct CachedPage {
  std::string title;
  std::optional<std::string> wikitext;  // nullopt caches a missing page
  TimePoint fetched_at;
  std::chrono::seconds ttl{0};

  bool Expired(TimePoint now) const { return now - fetched_at > ttl; }
};

struct PageLookup {
  std::optional<std::string> wikitext;
  // Set when the wiki could not be reached and an expired copy was served.
  bool stale = false;

  bool found() const { return wikitext.has_value(); }
};

// Fetches template pages through a TTL cache. Concurrent misses for the same
// title share a single upstream request. Thread-safe.
class TemplateStore {
 public:
  static constexpr std::chrono::seconds kDefaultTtl{300};

  TemplateStore(WikiSource source, std::shared_ptr<HttpTransport> transport,
                std::chrono::seconds ttl = kDefaultTtl,
                std::chrono::milliseconds timeout = std::chrono::seconds(30),
                ClockFn clock = nullptr);

  // Cached lookup. Throws WikiUnreachable / WikiProtocolError only when no
  // cached copy exists at all.
  PageLookup CachedFetch(const std::string &title);

  std::string CreateLink(std::string_view title) const {
    return wikidash::CreateLink(source_, title);
  }

  const WikiSource &source() const { return source_; }

  // Number of cached titles, including cached misses.
  size_t size() const;

 private:
  WikiSource source_;
  std::shared_ptr<HttpTransport> transport_;
  std::chrono::seconds ttl_;
  std::chrono::milliseconds timeout_;
  ClockFn clock_;

  mutable std::mutex mu_;
  std::map<std::string, CachedPage> cache_;
  std::map<std::string, std::shared_future<PageLookup>> inflight_;
};

}  // namespace wikidash

#endif  // WIKIDASH_TEMPLATE_STORE_H_
