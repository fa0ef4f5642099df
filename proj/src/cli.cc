#include "wikidash/cli.h"

#include "wikidash/composer.h"
#include "wikidash/render.h"
#include "wikidash/url.h"

namespace wikidash {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

int RenderCommand(const SiteConfig &config, std::shared_ptr<HttpTransport> transport,
                  const std::string &fragment, RenderFormat format,
                  std::ostream &out, std::ostream &err) {
  Composer composer(config, std::move(transport));
  RenderedPage page;
  try {
    page = composer.Compose(fragment);
  } catch (const MalformedFragment &e) {
    err << "malformed fragment: " << e.what() << "\n";
    return kExitMalformedFragment;
  } catch (const WikiUnreachable &e) {
    err << "wiki unreachable: " << e.what() << "\n";
    return kExitWikiUnreachable;
  } catch (const WikiProtocolError &e) {
    err << "wiki protocol error: " << e.what() << "\n";
    return kExitWikiUnreachable;
  }
  if (format == RenderFormat::kJson) {
    out << PageToJson(page).dump(2) << "\n";
  } else {
    out << PageToHtml(page);
  }
  return kExitOk;
}

int CheckTemplateCommand(const SiteConfig &config,
                         std::shared_ptr<HttpTransport> transport,
                         const std::string &title, std::ostream &out,
                         std::ostream &err) {
  std::optional<std::string> text;
  try {
    text = FetchWikitext(*transport, config.wiki, title,
                         std::chrono::seconds(config.query_timeout_seconds));
  } catch (const WikiUnreachable &e) {
    err << "wiki unreachable: " << e.what() << "\n";
    return kExitWikiUnreachable;
  } catch (const WikiProtocolError &e) {
    err << "wiki protocol error: " << e.what() << "\n";
    return kExitWikiUnreachable;
  } catch (const std::invalid_argument &e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (!text) {
    err << "page " << title << " does not exist; create it at "
        << CreateLink(config.wiki, title) << "\n";
    return kExitPageMissing;
  }

  std::vector<PageComponent> components = ParsePage(*text);
  std::vector<std::string> warnings;
  out << "page: " << title << "\n";
  out << "components: " << components.size() << "\n";

  for (size_t i = 0; i < components.size(); ++i) {
    std::string n = std::to_string(i + 1);
    auto warn = [&](const std::string &message) {
      warnings.push_back("component " + n + ": " + message);
    };
    out << "  " << n << ". ";
    std::visit(
        Overloaded{
            [&](const Heading &h) {
              out << "heading h" << h.level << " \"" << h.text << "\"\n";
            },
            [&](const HorizontalRule &) { out << "rule\n"; },
            [&](const BrokenTemplate &b) {
              out << "broken sparql template (" << TemplateErrorKindName(b.kind)
                  << ", line " << b.line << ")\n";
              warn(std::string(TemplateErrorKindName(b.kind)) + ": " + b.message);
            },
            [&](const SparqlPanel &p) {
              const SparqlTemplate &t = p.sparql;
              out << "sparql " << (t.view_directive ? "graph" : "table");
              if (t.view_directive) out << " view=" << *t.view_directive;

              const EndpointConfig *endpoint = nullptr;
              try {
                endpoint = &ResolveEndpoint(t, config.default_endpoint, config.allowlist);
              } catch (const EndpointNotAllowed &) {
              }
              if (!t.endpoint_override) {
                out << " endpoint=default";
              } else if (endpoint) {
                out << " endpoint=\"" << endpoint->label << "\"";
              } else {
                out << " endpoint=disallowed";
                warn("endpoint override host " + HostOf(*t.endpoint_override) +
                     " is not on the allowlist");
              }
              if (endpoint && t.view_directive && endpoint->embed_url.empty()) {
                warn("graph view requested but endpoint \"" + endpoint->label +
                     "\" has no embed page");
              }

              out << " placeholders=";
              auto tokens = FindPlaceholders(t.body);
              if (tokens.empty()) out << "none";
              for (size_t k = 0; k < tokens.size(); ++k) {
                if (k > 0) out << ",";
                out << tokens[k].token;
                if (!tokens[k].known) warn("unknown placeholder " + tokens[k].token);
              }
              out << "\n";
            },
        },
        components[i]);
  }

  out << "warnings: " << warnings.size() << "\n";
  for (const auto &w : warnings) out << "warning: " << w << "\n";
  return kExitOk;
}

}  // namespace wikidash
