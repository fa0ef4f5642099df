#include "wikidash/composer.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "wikidash/url.h"

namespace wikidash {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// "http://www.wikidata.org/entity/Q42" -> Q42, when the last path segment is
// an entity id.
std::optional<EntityId> EntityFromIri(const UrlParts &iri) {
  std::string_view path = iri.path;
  auto slash = path.rfind('/');
  return EntityId::Parse(path.substr(slash + 1));
}

}  // namespace

const char *PanelErrorKindName(PanelErrorKind kind) {
  switch (kind) {
    case PanelErrorKind::kTemplateError: return "template-error";
    case PanelErrorKind::kSecurity: return "security";
    case PanelErrorKind::kTimeout: return "timeout";
    case PanelErrorKind::kEndpointError: return "endpoint-error";
    case PanelErrorKind::kMalformedResults: return "malformed-results";
    case PanelErrorKind::kNoEmbedSupport: return "no-embed-support";
  }
  return "error";
}

Composer::Composer(SiteConfig config, std::shared_ptr<HttpTransport> transport,
                   ComposerOptions options)
    : config_((config.Validate(), std::move(config))),
      transport_(std::move(transport)),
      options_(std::move(options)),
      store_(config_.wiki, transport_, std::chrono::seconds(config_.cache_ttl_seconds),
             std::chrono::seconds(config_.query_timeout_seconds), options_.clock),
      gateway_(transport_, options_.per_endpoint_concurrency),
      wiki_host_(HostOf(config_.wiki.base_url)) {
  if (!options_.clock) {
    options_.clock = [] { return std::chrono::system_clock::now(); };
  }
}

std::vector<std::map<std::string, std::string>> Composer::LocalLinks(
    const SparqlResultSet &results, const AspectRoute &route) const {
  std::vector<std::map<std::string, std::string>> links(results.rows.size());
  if (route.segments.empty()) return links;
  const std::string &aspect = route.segments.back().aspect;

  for (size_t i = 0; i < results.rows.size(); ++i) {
    for (const auto &[name, term] : results.rows[i]) {
      if (term.kind != Term::Kind::kIri) continue;
      auto iri = ParseHttpUrl(term.value);
      if (!iri || iri->host != wiki_host_) continue;
      auto id = EntityFromIri(*iri);
      if (!id) continue;
      AspectRoute target;
      target.segments.push_back({aspect, {*id}});
      target.kind = RouteKind::kItem;
      links[i][name] = CanonicalFragment(target);
    }
  }
  return links;
}

Panel Composer::PanelForSparql(const SparqlTemplate &sparql,
                               const AspectRoute &route) {
  const EndpointConfig *endpoint = nullptr;
  try {
    endpoint = &ResolveEndpoint(sparql, config_.default_endpoint, config_.allowlist);
  } catch (const EndpointNotAllowed &) {
    // The URL itself is deliberately not repeated back to the reader.
    return ErrorPanel{PanelErrorKind::kSecurity,
                      "The template asks for a query service that is not on the "
                      "allowlist. The query was not sent.",
                      ""};
  }

  Interpolation query;
  try {
    query = Interpolate(sparql.body, route);
  } catch (const InterpolationError &e) {
    return ErrorPanel{PanelErrorKind::kTemplateError, e.what(), endpoint->label};
  }

  if (sparql.view_directive) {
    try {
      return GraphPanel{EmbedUrl(*endpoint, query.sparql), query.sparql,
                        endpoint->label, *sparql.view_directive, query.warnings};
    } catch (const NoEmbedSupport &e) {
      return ErrorPanel{PanelErrorKind::kNoEmbedSupport, e.what(), endpoint->label};
    }
  }

  try {
    SparqlResultSet results = gateway_.Execute(
        query.sparql, *endpoint, std::chrono::seconds(config_.query_timeout_seconds));
    auto links = LocalLinks(results, route);
    return TablePanel{std::move(results), query.sparql, endpoint->label,
                      std::move(links), query.warnings};
  } catch (const QueryTimeout &e) {
    return ErrorPanel{PanelErrorKind::kTimeout, e.what(), endpoint->label};
  } catch (const EndpointError &e) {
    return ErrorPanel{PanelErrorKind::kEndpointError, e.what(), endpoint->label};
  } catch (const MalformedResults &e) {
    return ErrorPanel{PanelErrorKind::kMalformedResults, e.what(), endpoint->label};
  } catch (const std::exception &e) {
    return ErrorPanel{PanelErrorKind::kEndpointError, e.what(), endpoint->label};
  }
}

Panel Composer::PanelForComponent(const PageComponent &component,
                                  const AspectRoute &route) {
  return std::visit(
      Overloaded{
          [](const Heading &h) -> Panel { return HeadingPanel{h.level, h.text}; },
          [](const HorizontalRule &) -> Panel { return RulePanel{}; },
          [&](const SparqlPanel &p) -> Panel { return PanelForSparql(p.sparql, route); },
          [](const BrokenTemplate &b) -> Panel {
            return ErrorPanel{PanelErrorKind::kTemplateError,
                              std::string(TemplateErrorKindName(b.kind)) + " (line " +
                                  std::to_string(b.line) + "): " + b.message,
                              ""};
          },
      },
      component);
}

RenderedPage Composer::Compose(std::string_view fragment) {
  RenderedPage page;
  page.route = ParseFragment(fragment);
  page.template_title = TemplatePageTitle(page.route, config_.wiki.namespace_prefix);

  PageLookup lookup = store_.CachedFetch(page.template_title);
  page.template_stale = lookup.stale;
  if (!lookup.found()) {
    page.panels.push_back(MissingTemplatePanel{
        page.template_title, store_.CreateLink(page.template_title)});
    page.generated_at = options_.clock();
    return page;
  }

  std::vector<PageComponent> components = ParsePage(*lookup.wikitext);
  std::vector<std::optional<Panel>> slots(components.size());

  // Workers claim components in order; results land in their own slot so the
  // output keeps wikipage order whatever the completion order.
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < components.size(); i = next++) {
      slots[i] = PanelForComponent(components[i], page.route);
    }
  };
  size_t queries = std::count_if(components.begin(), components.end(), [](auto &c) {
    return std::holds_alternative<SparqlPanel>(c);
  });
  size_t workers = std::min<size_t>(
      std::max(1, options_.panel_concurrency), std::max<size_t>(queries, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  page.panels.reserve(slots.size());
  for (auto &slot : slots) page.panels.push_back(std::move(*slot));
  page.generated_at = options_.clock();
  return page;
}

}  // namespace wikidash
