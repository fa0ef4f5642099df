#include "wikidash/template_store.h"

#include "wikidash/url.h"

namespace wikidash {

namespace {

std::string IndexPhp(const WikiSource &source) {
  return NormalizeEndpointUrl(source.base_url) + "/index.php";
}

}  // namespace

void WikiSource::Validate() const {
  if (!IsAbsoluteHttpUrl(base_url)) {
    throw std::invalid_argument("wiki base_url must be an absolute http(s) URL: " +
                                base_url);
  }
  if (namespace_prefix.empty() || namespace_prefix.back() != ':') {
    throw std::invalid_argument("namespace_prefix must end with ':': " +
                                namespace_prefix);
  }
}

std::string RawPageUrl(const WikiSource &source, std::string_view title) {
  return IndexPhp(source) + "?title=" + EncodeWikiTitle(title) + "&action=raw";
}

std::string CreateLink(const WikiSource &source, std::string_view title) {
  return IndexPhp(source) + "?title=" + EncodeWikiTitle(title) + "&action=edit";
}

std::optional<std::string> FetchWikitext(HttpTransport &transport,
                                         const WikiSource &source,
                                         std::string_view title,
                                         std::chrono::milliseconds timeout) {
  if (title.empty()) throw std::invalid_argument("empty page title");

  HttpRequest request;
  request.method = "GET";
  request.url = RawPageUrl(source, title);
  request.timeout = timeout;

  HttpResponse response;
  try {
    response = transport.Send(request);
  } catch (const TransportError &e) {
    throw WikiUnreachable("cannot reach wiki for " + std::string(title) + ": " +
                          e.what());
  }

  if (response.status == 200) return std::move(response.body);
  if (response.status == 404) return std::nullopt;
  if (response.status >= 500) {
    throw WikiUnreachable("wiki returned HTTP " + std::to_string(response.status) +
                          " for " + std::string(title));
  }
  throw WikiProtocolError("unexpected HTTP " + std::to_string(response.status) +
                          " from wiki for " + std::string(title));
}

TemplateStore::TemplateStore(WikiSource source,
                             std::shared_ptr<HttpTransport> transport,
                             std::chrono::seconds ttl,
                             std::chrono::milliseconds timeout, ClockFn clock)
    : source_(std::move(source)),
      transport_(std::move(transport)),
      ttl_(ttl),
      timeout_(timeout),
      clock_(clock ? std::move(clock)
                   : ClockFn([] { return std::chrono::system_clock::now(); })) {
  source_.Validate();
}

size_t TemplateStore::size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

PageLookup TemplateStore::CachedFetch(const std::string &title) {
  std::promise<PageLookup> promise;
  {
    std::unique_lock lock(mu_);
    auto it = cache_.find(title);
    if (it != cache_.end() && !it->second.Expired(clock_())) {
      return PageLookup{it->second.wikitext, false};
    }
    auto pending = inflight_.find(title);
    if (pending != inflight_.end()) {
      std::shared_future<PageLookup> shared = pending->second;
      lock.unlock();
      return shared.get();
    }
    inflight_.emplace(title, promise.get_future().share());
  }

  // This thread is the leader for the title; followers wait on the promise.
  try {
    std::optional<std::string> text =
        FetchWikitext(*transport_, source_, title, timeout_);
    PageLookup result{text, false};
    {
      std::lock_guard lock(mu_);
      cache_[title] = CachedPage{title, std::move(text), clock_(), ttl_};
      inflight_.erase(title);
    }
    promise.set_value(result);
    return result;
  } catch (...) {
    std::optional<PageLookup> stale;
    {
      std::lock_guard lock(mu_);
      inflight_.erase(title);
      auto it = cache_.find(title);
      if (it != cache_.end()) stale = PageLookup{it->second.wikitext, true};
    }
    if (stale) {
      promise.set_value(*stale);
      return *stale;
    }
    promise.set_exception(std::current_exception());
    throw;
  }
}

}  // namespace wikidash
