#include "wikidash/sparql.h"

#include <algorithm>

#include <json.hpp>

#include "wikidash/url.h"

namespace wikidash {

using json = nlohmann::json;

namespace {

enum class PlaceholderKind { kIndex, kList, kUnknown };

struct Placeholder {
  PlaceholderKind kind;
  size_t length;  // including braces
  size_t index;   // 1-based, for kIndex
};

bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Recognizes "{" letter ("s" | digits*) "}" at text[pos].
std::optional<Placeholder> MatchPlaceholder(std::string_view text, size_t pos) {
  if (pos + 2 >= text.size() || text[pos] != '{' || !IsLower(text[pos + 1])) {
    return std::nullopt;
  }
  char letter = text[pos + 1];
  bool known = letter == 'q' || letter == 'l';
  size_t k = pos + 2;
  if (text[k] == 's' && k + 1 < text.size() && text[k + 1] == '}') {
    return Placeholder{known ? PlaceholderKind::kList : PlaceholderKind::kUnknown,
                       k + 2 - pos, 0};
  }
  size_t digits_begin = k;
  while (k < text.size() && IsDigit(text[k])) ++k;
  if (k >= text.size() || text[k] != '}') return std::nullopt;
  std::string_view digits = text.substr(digits_begin, k - digits_begin);
  Placeholder p{known ? PlaceholderKind::kIndex : PlaceholderKind::kUnknown,
                k + 1 - pos, 1};
  if (!digits.empty()) {
    if (digits.size() > 9) {
      p.index = 1000000000;  // certainly out of range
    } else {
      p.index = std::stoul(std::string(digits));
    }
    if (p.index == 0) p.kind = PlaceholderKind::kUnknown;
  }
  return p;
}

Term DecodeTerm(const json &value) {
  if (!value.is_object()) throw MalformedResults("binding value is not an object");
  auto type = value.find("type");
  auto text = value.find("value");
  if (type == value.end() || !type->is_string() || text == value.end() ||
      !text->is_string()) {
    throw MalformedResults("binding value lacks type or value");
  }
  const std::string &kind = type->get_ref<const std::string &>();
  std::string lexical = text->get<std::string>();
  if (kind == "uri") return Term::Iri(std::move(lexical));
  if (kind == "bnode") return Term::BlankNode(std::move(lexical));
  if (kind == "literal" || kind == "typed-literal") {
    std::string language, datatype;
    if (auto lang = value.find("xml:lang"); lang != value.end()) {
      if (!lang->is_string()) throw MalformedResults("xml:lang is not a string");
      language = lang->get<std::string>();
    }
    if (auto dt = value.find("datatype"); dt != value.end()) {
      if (!dt->is_string()) throw MalformedResults("datatype is not a string");
      datatype = dt->get<std::string>();
    }
    return Term::Literal(std::move(lexical), std::move(language),
                         std::move(datatype));
  }
  throw MalformedResults("unknown value type \"" + kind + "\"");
}

std::string Snippet(const std::string &body) {
  constexpr size_t kMax = 300;
  if (body.size() <= kMax) return body;
  return body.substr(0, kMax) + "...";
}

}  // namespace

void EndpointConfig::Validate() const {
  if (!IsAbsoluteHttpUrl(query_url)) {
    throw std::invalid_argument("endpoint query_url must be absolute http(s): " +
                                query_url);
  }
  if (!embed_url.empty() && !IsAbsoluteHttpUrl(embed_url)) {
    throw std::invalid_argument("endpoint embed_url must be absolute http(s): " +
                                embed_url);
  }
}

Interpolation Interpolate(std::string_view body,
                          std::span<const std::vector<EntityId>> ids_per_segment) {
  std::vector<EntityId> flat;
  for (const auto &segment : ids_per_segment) {
    flat.insert(flat.end(), segment.begin(), segment.end());
  }

  Interpolation result;
  result.sparql.reserve(body.size());
  bool any_placeholder = false;
  size_t i = 0;
  while (i < body.size()) {
    auto placeholder = body[i] == '{' ? MatchPlaceholder(body, i) : std::nullopt;
    if (!placeholder) {
      result.sparql.push_back(body[i++]);
      continue;
    }
    std::string token(body.substr(i, placeholder->length));
    switch (placeholder->kind) {
      case PlaceholderKind::kUnknown:
        throw InterpolationError(InterpolationError::Kind::kUnknownPlaceholder,
                                 "unknown placeholder " + token);
      case PlaceholderKind::kIndex:
        if (placeholder->index > flat.size()) {
          throw InterpolationError(
              InterpolationError::Kind::kArityMismatch,
              token + " needs " + std::to_string(placeholder->index) +
                  " identifier(s), route has " + std::to_string(flat.size()));
        }
        result.sparql += flat[placeholder->index - 1].str();
        break;
      case PlaceholderKind::kList: {
        if (ids_per_segment.empty() || ids_per_segment.front().empty()) {
          throw InterpolationError(InterpolationError::Kind::kArityMismatch,
                                   token + " needs identifiers in the first segment");
        }
        const auto &ids = ids_per_segment.front();
        for (size_t k = 0; k < ids.size(); ++k) {
          if (k > 0) result.sparql += ' ';
          result.sparql += "wd:" + ids[k].str();
        }
        break;
      }
    }
    any_placeholder = true;
    i += placeholder->length;
  }

  if (!any_placeholder && !flat.empty()) {
    result.warnings.push_back("identifiers supplied but the query has no placeholders");
  }
  return result;
}

std::vector<PlaceholderToken> FindPlaceholders(std::string_view body) {
  std::vector<PlaceholderToken> tokens;
  size_t i = 0;
  while (i < body.size()) {
    auto placeholder = body[i] == '{' ? MatchPlaceholder(body, i) : std::nullopt;
    if (!placeholder) {
      ++i;
      continue;
    }
    tokens.push_back({std::string(body.substr(i, placeholder->length)),
                      placeholder->kind != PlaceholderKind::kUnknown});
    i += placeholder->length;
  }
  return tokens;
}

Interpolation Interpolate(std::string_view body, const AspectRoute &route) {
  std::vector<std::vector<EntityId>> ids;
  for (const auto &segment : route.segments) ids.push_back(segment.ids);
  return Interpolate(body, ids);
}

const EndpointConfig &ResolveEndpoint(const SparqlTemplate &sparql,
                                      const EndpointConfig &default_endpoint,
                                      std::span<const EndpointConfig> allowlist) {
  if (!sparql.endpoint_override) return default_endpoint;
  std::string wanted = NormalizeEndpointUrl(*sparql.endpoint_override);
  for (const auto &entry : allowlist) {
    if (NormalizeEndpointUrl(entry.query_url) == wanted) return entry;
  }
  throw EndpointNotAllowed(*sparql.endpoint_override);
}

SparqlResultSet ParseResultsJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw MalformedResults(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedResults("results document is not an object");

  auto head = doc.find("head");
  auto results = doc.find("results");
  if (head == doc.end() || !head->is_object()) throw MalformedResults("missing head");
  if (results == doc.end() || !results->is_object()) {
    throw MalformedResults("missing results");
  }

  SparqlResultSet out;
  if (auto vars = head->find("vars"); vars != head->end()) {
    if (!vars->is_array()) throw MalformedResults("head.vars is not an array");
    for (const auto &var : *vars) {
      if (!var.is_string()) throw MalformedResults("variable name is not a string");
      out.variables.push_back(var.get<std::string>());
    }
  }

  auto bindings = results->find("bindings");
  if (bindings == results->end() || !bindings->is_array()) {
    throw MalformedResults("missing results.bindings");
  }
  for (const auto &binding : *bindings) {
    if (!binding.is_object()) throw MalformedResults("binding is not an object");
    ResultRow row;
    for (const auto &[name, value] : binding.items()) {
      if (std::find(out.variables.begin(), out.variables.end(), name) ==
          out.variables.end()) {
        throw MalformedResults("binding for undeclared variable \"" + name + "\"");
      }
      row.emplace(name, DecodeTerm(value));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string SerializeResultsJson(const SparqlResultSet &results) {
  json bindings = json::array();
  for (const auto &row : results.rows) {
    json binding = json::object();
    for (const auto &[name, term] : row) {
      json value;
      switch (term.kind) {
        case Term::Kind::kIri: value["type"] = "uri"; break;
        case Term::Kind::kLiteral: value["type"] = "literal"; break;
        case Term::Kind::kBlankNode: value["type"] = "bnode"; break;
      }
      value["value"] = term.value;
      if (!term.language.empty()) value["xml:lang"] = term.language;
      if (!term.datatype.empty()) value["datatype"] = term.datatype;
      binding[name] = std::move(value);
    }
    bindings.push_back(std::move(binding));
  }
  json doc;
  doc["head"]["vars"] = results.variables;
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump();
}

std::string EmbedUrl(const EndpointConfig &endpoint, std::string_view sparql) {
  if (endpoint.embed_url.empty()) {
    throw NoEmbedSupport("endpoint \"" + endpoint.label + "\" has no embed page");
  }
  return endpoint.embed_url + "#" + PercentEncode(sparql);
}

HttpRequest BuildQueryRequest(const EndpointConfig &endpoint,
                              std::string_view sparql,
                              std::chrono::milliseconds timeout) {
  HttpRequest request;
  request.timeout = timeout;
  request.headers.emplace_back("Accept", "application/sparql-results+json");
  std::string encoded = FormEncode(sparql);
  if (encoded.size() <= kMaxGetQueryBytes) {
    request.method = "GET";
    char joiner = endpoint.query_url.find('?') == std::string::npos ? '?' : '&';
    request.url = endpoint.query_url + joiner + "query=" + encoded;
  } else {
    request.method = "POST";
    request.url = endpoint.query_url;
    request.content_type = "application/x-www-form-urlencoded";
    request.body = "query=" + encoded;
  }
  return request;
}

SparqlGateway::SparqlGateway(std::shared_ptr<HttpTransport> transport,
                             int per_endpoint_limit)
    : transport_(std::move(transport)), limit_(std::max(1, per_endpoint_limit)) {}

void SparqlGateway::Slots::Acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return free_ > 0; });
  --free_;
}

void SparqlGateway::Slots::Release() {
  {
    std::lock_guard lock(mu_);
    ++free_;
  }
  cv_.notify_one();
}

SparqlGateway::Slots &SparqlGateway::SlotsFor(const std::string &query_url) {
  std::lock_guard lock(mu_);
  auto &slots = slots_[NormalizeEndpointUrl(query_url)];
  if (!slots) slots = std::make_unique<Slots>(limit_);
  return *slots;
}

SparqlResultSet SparqlGateway::Execute(std::string_view sparql,
                                       const EndpointConfig &endpoint,
                                       std::chrono::milliseconds timeout) {
  HttpRequest request = BuildQueryRequest(endpoint, sparql, timeout);

  HttpResponse response;
  {
    Slots &slots = SlotsFor(endpoint.query_url);
    slots.Acquire();
    struct Releaser {
      Slots &slots;
      ~Releaser() { slots.Release(); }
    } releaser{slots};
    try {
      response = transport_->Send(request);
    } catch (const TransportError &e) {
      if (e.kind() == TransportError::Kind::kTimeout) {
        throw QueryTimeout("query to " + endpoint.label + " timed out after " +
                           std::to_string(timeout.count()) + " ms");
      }
      throw EndpointError(0, "cannot reach " + endpoint.label + ": " + e.what());
    }
  }

  if (response.status < 200 || response.status >= 300) {
    throw EndpointError(response.status, endpoint.label + " returned HTTP " +
                                             std::to_string(response.status) +
                                             ": " + Snippet(response.body));
  }
  return ParseResultsJson(response.body);
}

}  // namespace wikidash
