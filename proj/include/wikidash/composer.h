#ifndef WIKIDASH_COMPOSER_H_
#define WIKIDASH_COMPOSER_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wikidash/config.h"
#include "wikidash/fragment.h"
#include "wikidash/sparql.h"
#include "wikidash/template_store.h"
#include "wikidash/wikitext.h"

namespace wikidash {

struct HeadingPanel {
  int level = 1;
  std::string text;

  bool operator==(const HeadingPanel &) const = default;
};

struct RulePanel {
  bool operator==(const RulePanel &) const = default;
};

struct TablePanel {
  SparqlResultSet results;
  std::string source_sparql;
  std::string endpoint_label;
  // In-app fragment links for IRI cells, parallel to results.rows and keyed
  // by variable. Only cells with a link are present.
  std::vector<std::map<std::string, std::string>> links;
  std::vector<std::string> warnings;

  bool operator==(const TablePanel &) const = default;
};

struct GraphPanel {
  std::string iframe_url;
  std::string source_sparql;
  std::string endpoint_label;
  std::string view;  // value of the #defaultView directive
  std::vector<std::string> warnings;

  bool operator==(const GraphPanel &) const = default;
};

enum class PanelErrorKind {
  kTemplateError,    // broken {{SPARQL}} or bad placeholders
  kSecurity,         // endpoint override outside the allowlist
  kTimeout,
  kEndpointError,
  kMalformedResults,
  kNoEmbedSupport,
};

const char *PanelErrorKindName(PanelErrorKind kind);

struct ErrorPanel {
  PanelErrorKind kind;
  std::string message;
  std::string endpoint_label;  // empty when no allowlisted endpoint applies

  bool operator==(const ErrorPanel &) const = default;
};

struct MissingTemplatePanel {
  std::string title;
  std::string create_url;

  bool operator==(const MissingTemplatePanel &) const = default;
};

using Panel = std::variant<HeadingPanel, RulePanel, TablePanel, GraphPanel,
                           ErrorPanel, MissingTemplatePanel>;

struct RenderedPage {
  AspectRoute route;
  std::string template_title;
  std::vector<Panel> panels;  // wikipage order
  TimePoint generated_at;
  bool template_stale = false;
};

struct ComposerOptions {
  int panel_concurrency = 4;
  int per_endpoint_concurrency = kDefaultPerEndpointConcurrency;
  ClockFn clock;  // defaults to the system clock
};

// Turns fragments into pages: route -> template page -> components ->
// panels. Reentrant; concurrent Compose calls share the page cache and the
// transport.
class Composer {
 public:
  Composer(SiteConfig config, std::shared_ptr<HttpTransport> transport,
           ComposerOptions options = {});

  // Throws MalformedFragment, WikiUnreachable or WikiProtocolError. Every
  // other failure is confined to the panel it occurs in.
  RenderedPage Compose(std::string_view fragment);

  // Never throws; failures become an ErrorPanel.
  Panel PanelForSparql(const SparqlTemplate &sparql, const AspectRoute &route);

  const SiteConfig &config() const { return config_; }
  TemplateStore &store() { return store_; }

 private:
  Panel PanelForComponent(const PageComponent &component, const AspectRoute &route);
  std::vector<std::map<std::string, std::string>> LocalLinks(
      const SparqlResultSet &results, const AspectRoute &route) const;

  SiteConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  ComposerOptions options_;
  TemplateStore store_;
  SparqlGateway gateway_;
  std::string wiki_host_;
};

}  // namespace wikidash

#endif  // WIKIDASH_COMPOSER_H_
