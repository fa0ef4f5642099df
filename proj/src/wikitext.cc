#include "wikidash/wikitext.h"

#include <algorithm>
#include <cctype>

#include "wikidash/url.h"

namespace wikidash {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";
constexpr std::string_view kPipeEscape = "{{!}}";

std::string_view Trim(std::string_view s) {
  auto begin = s.find_first_not_of(kWhitespace);
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(kWhitespace);
  return s.substr(begin, end - begin + 1);
}

size_t RunLength(std::string_view text, size_t pos, char c) {
  size_t end = pos;
  while (end < text.size() && text[end] == c) ++end;
  return end - pos;
}

// Visits text[begin, end) tracking template depth. Calls on_pipe(pos) for
// every "|" at depth zero.
template <typename OnPipe>
void ScanTopLevel(std::string_view text, OnPipe on_pipe) {
  size_t depth = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '{' || c == '}') {
      size_t n = RunLength(text, i, c);
      if (c == '{') {
        depth += n / 2;
      } else {
        depth -= std::min(depth, n / 2);
      }
      i += n;
      continue;
    }
    if (c == '|' && depth == 0) on_pipe(i);
    ++i;
  }
}

// Template name of an invocation body (text after the opening braces).
std::string_view TemplateName(std::string_view after_open) {
  auto end = after_open.find_first_of("|{}");
  return Trim(after_open.substr(0, end));
}

bool IsSparqlTemplateName(std::string_view name) {
  constexpr std::string_view kNamespace = "Template:";
  if (name.size() > kNamespace.size() &&
      name.substr(0, kNamespace.size()) == kNamespace) {
    name = Trim(name.substr(kNamespace.size()));
  }
  // MediaWiki titles are case-insensitive in their first letter only.
  if (name.size() != 6) return false;
  return (name[0] == 'S' || name[0] == 's') && name.substr(1) == "PARQL";
}

std::optional<std::string> FindViewDirective(std::string_view body) {
  constexpr std::string_view kDirective = "#defaultView:";
  size_t start = 0;
  while (start <= body.size()) {
    size_t end = body.find('\n', start);
    std::string_view line = body.substr(
        start, end == std::string_view::npos ? std::string_view::npos
                                             : end - start);
    auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos &&
        line.substr(first, kDirective.size()) == kDirective) {
      std::string_view rest = line.substr(first + kDirective.size());
      size_t len = 0;
      while (len < rest.size() &&
             (std::isalnum(static_cast<unsigned char>(rest[len])) ||
              rest[len] == '_')) {
        ++len;
      }
      if (len > 0) return std::string(rest.substr(0, len));
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return std::nullopt;
}

// "== Text ==" style heading. Mirrors MediaWiki: the level is the smaller of
// the leading and trailing "=" counts, surplus signs belong to the text.
std::optional<Heading> MatchHeading(std::string_view line) {
  auto last = line.find_last_not_of(" \t\r");
  if (last == std::string_view::npos) return std::nullopt;
  line = line.substr(0, last + 1);
  if (line.front() != '=' || line.back() != '=') return std::nullopt;

  size_t leading = RunLength(line, 0, '=');
  if (leading == line.size()) return std::nullopt;  // only "=" signs
  size_t trailing = 0;
  while (line[line.size() - 1 - trailing] == '=') ++trailing;

  size_t level = std::min(leading, trailing);
  if (level > 3) return std::nullopt;
  std::string_view text = Trim(line.substr(level, line.size() - 2 * level));
  if (text.empty()) return std::nullopt;
  return Heading{static_cast<int>(level), std::string(text)};
}

bool MatchRule(std::string_view line) {
  size_t hyphens = RunLength(line, 0, '-');
  if (hyphens < 4) return false;
  return line.find_first_not_of(" \t\r", hyphens) == std::string_view::npos;
}

}  // namespace

const char *TemplateErrorKindName(TemplateErrorKind kind) {
  switch (kind) {
    case TemplateErrorKind::kUnterminatedTemplate: return "unterminated-template";
    case TemplateErrorKind::kMissingSparqlParameter: return "missing-sparql-parameter";
    case TemplateErrorKind::kInvalidEndpointParameter: return "invalid-endpoint-parameter";
  }
  return "template-error";
}

std::optional<size_t> FindTemplateEnd(std::string_view text, size_t open) {
  if (text.substr(open, 2) != "{{") return std::nullopt;
  size_t depth = 0;
  size_t i = open;
  while (i < text.size()) {
    char c = text[i];
    if (c != '{' && c != '}') {
      ++i;
      continue;
    }
    size_t n = RunLength(text, i, c);
    if (c == '{') {
      depth += n / 2;
    } else {
      depth -= std::min(depth, n / 2);
      if (depth == 0) return i + n;
    }
    i += n;
  }
  return std::nullopt;
}

std::string UnescapePipes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (true) {
    size_t hit = text.find(kPipeEscape, pos);
    if (hit == std::string_view::npos) {
      out.append(text.substr(pos));
      return out;
    }
    out.append(text.substr(pos, hit - pos));
    out.push_back('|');
    pos = hit + kPipeEscape.size();
  }
}

SparqlTemplate ExtractSparqlTemplate(std::string_view invocation) {
  std::string_view inner = invocation;
  if (inner.substr(0, 2) == "{{") inner.remove_prefix(2);
  if (inner.size() >= 2 && inner.substr(inner.size() - 2) == "}}") {
    inner.remove_suffix(2);
  }

  std::vector<std::string_view> parts;
  size_t start = 0;
  ScanTopLevel(inner, [&](size_t pipe) {
    parts.push_back(inner.substr(start, pipe - start));
    start = pipe + 1;
  });
  parts.push_back(inner.substr(start));

  SparqlTemplate result;
  std::optional<std::string> body;
  int positional = 0;
  // parts[0] is the template name.
  for (size_t i = 1; i < parts.size(); ++i) {
    std::string_view part = parts[i];
    auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      result.extra_params[std::to_string(++positional)] = std::string(part);
      continue;
    }
    std::string name(Trim(part.substr(0, eq)));
    std::string_view value = Trim(part.substr(eq + 1));
    if (name == "sparql") {
      body = UnescapePipes(value);
    } else if (name == "endpoint") {
      std::string url = UnescapePipes(value);
      if (url.empty()) {
        result.endpoint_override.reset();
      } else {
        result.endpoint_override = std::move(url);
      }
    } else {
      result.extra_params[name] = std::string(value);
    }
  }

  if (!body || Trim(*body).empty()) {
    throw TemplateError(TemplateErrorKind::kMissingSparqlParameter,
                        "{{SPARQL}} has no sparql= parameter");
  }
  if (result.endpoint_override && !IsAbsoluteHttpUrl(*result.endpoint_override)) {
    throw TemplateError(TemplateErrorKind::kInvalidEndpointParameter,
                        "endpoint= is not an absolute http(s) URL");
  }
  result.body = std::move(*body);
  result.view_directive = FindViewDirective(result.body);
  return result;
}

std::string RenderSparqlInvocation(const SparqlTemplate &sparql) {
  auto escape = [](std::string_view text) {
    std::string out;
    for (char c : text) {
      if (c == '|') {
        out.append(kPipeEscape);
      } else {
        out.push_back(c);
      }
    }
    return out;
  };
  std::string out = "{{SPARQL";
  if (sparql.endpoint_override) {
    out += "|endpoint=" + escape(*sparql.endpoint_override);
  }
  for (const auto &[name, value] : sparql.extra_params) {
    out += "|" + name + "=" + escape(value);
  }
  out += "|sparql=" + escape(sparql.body) + "}}";
  return out;
}

std::vector<PageComponent> ParsePage(std::string_view text) {
  std::vector<PageComponent> components;
  size_t pos = 0;
  size_t line_no = 1;
  bool line_start = true;

  while (pos < text.size()) {
    size_t line_end = text.find('\n', pos);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(pos, line_end - pos);

    if (line_start) {
      if (auto heading = MatchHeading(line)) {
        components.push_back(std::move(*heading));
        pos = line_end + 1;
        ++line_no;
        continue;
      }
      if (MatchRule(line)) {
        components.push_back(HorizontalRule{});
        pos = line_end + 1;
        ++line_no;
        continue;
      }
    }

    size_t brace = line.find("{{");
    if (brace == std::string_view::npos) {
      pos = line_end + 1;
      ++line_no;
      line_start = true;
      continue;
    }

    // A run of 2k+1 braces opens its templates after the first brace.
    size_t run_start = pos + brace;
    size_t open = run_start + RunLength(text, run_start, '{') % 2;
    std::string_view name = TemplateName(text.substr(open + 2));
    bool is_sparql = IsSparqlTemplateName(name);
    auto end = FindTemplateEnd(text, open);

    if (!end) {
      if (is_sparql) {
        components.push_back(BrokenTemplate{
            TemplateErrorKind::kUnterminatedTemplate,
            "{{SPARQL}} is missing its closing }}", line_no});
        pos = line_end + 1;
        ++line_no;
        line_start = true;
      } else {
        pos = open + 2;
        line_start = false;
      }
      continue;
    }

    std::string_view invocation = text.substr(open, *end - open);
    if (is_sparql) {
      try {
        components.push_back(SparqlPanel{ExtractSparqlTemplate(invocation)});
      } catch (const TemplateError &e) {
        components.push_back(BrokenTemplate{e.kind(), e.what(), line_no});
      }
    }
    for (char c : text.substr(pos, *end - pos)) {
      if (c == '\n') ++line_no;
    }
    pos = *end;
    line_start = false;
  }
  return components;
}

}  // namespace wikidash
