#ifndef WIKIDASH_WIKITEXT_H_
#define WIKIDASH_WIKITEXT_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wikidash {

// A {{SPARQL}} template invocation found on a template page.
struct SparqlTemplate {
  std::string body;                           // query text, pipes unescaped
  std::optional<std::string> endpoint_override;
  std::optional<std::string> view_directive;  // from "#defaultView:<token>"
  std::map<std::string, std::string> extra_params;

  bool operator==(const SparqlTemplate &) const = default;
};

struct Heading {
  int level = 1;  // 1..3
  std::string text;

  bool operator==(const Heading &) const = default;
};

struct HorizontalRule {
  bool operator==(const HorizontalRule &) const = default;
};

struct SparqlPanel {
  SparqlTemplate sparql;

  bool operator==(const SparqlPanel &) const = default;
};

enum class TemplateErrorKind {
  kUnterminatedTemplate,
  kMissingSparqlParameter,
  kInvalidEndpointParameter,
};

const char *TemplateErrorKindName(TemplateErrorKind kind);

// A {{SPARQL}} invocation that could not be turned into a SparqlTemplate.
// Kept in the component list so the page still maps one component to one
// panel and the problem is shown where the template sits.
struct BrokenTemplate {
  TemplateErrorKind kind;
  std::string message;
  size_t line = 0;  // 1-based line of the opening "{{"

  bool operator==(const BrokenTemplate &) const = default;
};

using PageComponent =
    std::variant<Heading, HorizontalRule, SparqlPanel, BrokenTemplate>;

class TemplateError : public std::runtime_error {
 public:
  TemplateError(TemplateErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  TemplateErrorKind kind() const { return kind_; }

 private:
  TemplateErrorKind kind_;
};

// Splits a template page into the components the dashboard understands, in
// document order. Anything else (free text, lists, links, other templates)
// is skipped. Never throws.
std::vector<PageComponent> ParsePage(std::string_view wikitext);

// Parses one complete "{{SPARQL|...}}" invocation. Throws TemplateError.
SparqlTemplate ExtractSparqlTemplate(std::string_view invocation);

// Writes a template back as wikitext, escaping pipes in the body as {{!}}.
std::string RenderSparqlInvocation(const SparqlTemplate &sparql);

// Replaces each "{{!}}" with "|".
std::string UnescapePipes(std::string_view text);

// Finds the end of the template starting at text[open] (which must be "{{").
// Only "{{" and "}}" digraphs change depth; a run of closing braces longer
// than needed closes with its last two braces, so "{ ?x }}}" leaves the
// first "}" inside. Returns the offset one past the closing "}}", or
// nullopt when the template is not terminated.
std::optional<size_t> FindTemplateEnd(std::string_view text, size_t open);

}  // namespace wikidash

#endif  // WIKIDASH_WIKITEXT_H_
