#include "wikidash/render.h"

#include <ctime>

namespace wikidash {

using json = nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const char *TermKindName(Term::Kind kind) {
  switch (kind) {
    case Term::Kind::kIri: return "iri";
    case Term::Kind::kLiteral: return "literal";
    case Term::Kind::kBlankNode: return "bnode";
  }
  return "literal";
}

json TermToJson(const Term &term, const std::string *link) {
  json out = {{"type", TermKindName(term.kind)}, {"value", term.value}};
  if (!term.language.empty()) out["language"] = term.language;
  if (!term.datatype.empty()) out["datatype"] = term.datatype;
  if (link) out["link"] = *link;
  return out;
}

json RouteToJson(const AspectRoute &route) {
  json segments = json::array();
  for (const auto &segment : route.segments) {
    json ids = json::array();
    for (const auto &id : segment.ids) ids.push_back(id.str());
    segments.push_back({{"aspect", segment.aspect}, {"ids", ids}});
  }
  return {{"kind", RouteKindName(route.kind)}, {"segments", segments}};
}

json PanelToJson(const Panel &panel) {
  return std::visit(
      Overloaded{
          [](const HeadingPanel &p) -> json {
            return {{"type", "heading"}, {"level", p.level}, {"text", p.text}};
          },
          [](const RulePanel &) -> json { return {{"type", "rule"}}; },
          [](const TablePanel &p) -> json {
            json rows = json::array();
            for (size_t i = 0; i < p.results.rows.size(); ++i) {
              json row = json::object();
              for (const auto &[name, term] : p.results.rows[i]) {
                const std::string *link = nullptr;
                if (i < p.links.size()) {
                  auto it = p.links[i].find(name);
                  if (it != p.links[i].end()) link = &it->second;
                }
                row[name] = TermToJson(term, link);
              }
              rows.push_back(std::move(row));
            }
            return {{"type", "table"},          {"endpoint", p.endpoint_label},
                    {"sparql", p.source_sparql}, {"variables", p.results.variables},
                    {"rows", rows},             {"warnings", p.warnings}};
          },
          [](const GraphPanel &p) -> json {
            return {{"type", "graph"},          {"endpoint", p.endpoint_label},
                    {"sparql", p.source_sparql}, {"view", p.view},
                    {"iframe_url", p.iframe_url}, {"warnings", p.warnings}};
          },
          [](const ErrorPanel &p) -> json {
            json out = {{"type", "error"},
                        {"kind", PanelErrorKindName(p.kind)},
                        {"message", p.message}};
            if (!p.endpoint_label.empty()) out["endpoint"] = p.endpoint_label;
            return out;
          },
          [](const MissingTemplatePanel &p) -> json {
            return {{"type", "missing-template"},
                    {"title", p.title},
                    {"create_url", p.create_url}};
          },
      },
      panel);
}

void AppendTable(std::string &html, const TablePanel &p) {
  html += "<table>\n<tr>";
  for (const auto &var : p.results.variables) html += "<th>" + HtmlEscape(var) + "</th>";
  html += "</tr>\n";
  if (p.results.rows.empty()) {
    html += "<tr><td colspan=\"" + std::to_string(p.results.variables.size()) +
            "\">No results</td></tr>\n";
  }
  for (size_t i = 0; i < p.results.rows.size(); ++i) {
    html += "<tr>";
    for (const auto &var : p.results.variables) {
      html += "<td>";
      auto it = p.results.rows[i].find(var);
      if (it != p.results.rows[i].end()) {
        const Term &term = it->second;
        const std::string *link = nullptr;
        if (i < p.links.size()) {
          auto found = p.links[i].find(var);
          if (found != p.links[i].end()) link = &found->second;
        }
        if (link) {
          html += "<a href=\"" + HtmlEscape(*link) + "\">" +
                  HtmlEscape(term.value) + "</a>";
        } else {
          html += HtmlEscape(term.value);
        }
        if (!term.language.empty()) html += "<sup>" + HtmlEscape(term.language) + "</sup>";
      }
      html += "</td>";
    }
    html += "</tr>\n";
  }
  html += "</table>\n";
}

}  // namespace

std::string HtmlEscape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string FormatTimestamp(TimePoint time) {
  std::time_t t = std::chrono::system_clock::to_time_t(time);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json ErrorJson(std::string_view kind, std::string_view message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

json PageToJson(const RenderedPage &page) {
  json panels = json::array();
  for (const auto &panel : page.panels) panels.push_back(PanelToJson(panel));
  return {{"fragment", CanonicalFragment(page.route)},
          {"route", RouteToJson(page.route)},
          {"template_title", page.template_title},
          {"template_stale", page.template_stale},
          {"generated_at", FormatTimestamp(page.generated_at)},
          {"panels", panels}};
}

std::string PageToHtml(const RenderedPage &page) {
  std::string html =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
      HtmlEscape(page.template_title) + "</title>\n</head>\n<body>\n";
  if (page.template_stale) {
    html += "<p><em>Template served from cache; the wiki could not be reached.</em></p>\n";
  }
  for (const auto &panel : page.panels) {
    std::visit(
        Overloaded{
            [&](const HeadingPanel &p) {
              std::string tag = "h" + std::to_string(p.level);
              html += "<" + tag + ">" + HtmlEscape(p.text) + "</" + tag + ">\n";
            },
            [&](const RulePanel &) { html += "<hr>\n"; },
            [&](const TablePanel &p) { AppendTable(html, p); },
            [&](const GraphPanel &p) {
              html += "<iframe src=\"" + HtmlEscape(p.iframe_url) +
                      "\" sandbox=\"allow-scripts allow-same-origin\" "
                      "referrerpolicy=\"no-referrer\" width=\"100%\" "
                      "height=\"400\"></iframe>\n";
            },
            [&](const ErrorPanel &p) {
              html += "<div class=\"error\"><strong>" +
                      HtmlEscape(PanelErrorKindName(p.kind)) + "</strong>: " +
                      HtmlEscape(p.message) + "</div>\n";
            },
            [&](const MissingTemplatePanel &p) {
              html += "<p>No template page " + HtmlEscape(p.title) +
                      ". <a href=\"" + HtmlEscape(p.create_url) +
                      "\">Create it on the wiki</a>.</p>\n";
            },
        },
        panel);
  }
  html += "</body>\n</html>\n";
  return html;
}

}  // namespace wikidash
