#ifndef WIKIDASH_SPARQL_H_
#define WIKIDASH_SPARQL_H_

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wikidash/fragment.h"
#include "wikidash/http.h"
#include "wikidash/wikitext.h"

namespace wikidash {

// A SPARQL query service the engine may talk to.
struct EndpointConfig {
  std::string query_url;
  std::string embed_url;  // empty: the service has no embed page
  std::string label;

  void Validate() const;

  bool operator==(const EndpointConfig &) const = default;
};

// One RDF term of a result row.
struct Term {
  enum class Kind { kIri, kLiteral, kBlankNode };

  Kind kind = Kind::kLiteral;
  std::string value;     // IRI, lexical form or blank node label
  std::string language;  // literals only, may be empty
  std::string datatype;  // literals only, may be empty

  static Term Iri(std::string iri) { return {Kind::kIri, std::move(iri), {}, {}}; }
  static Term Literal(std::string text, std::string language = {},
                      std::string datatype = {}) {
    return {Kind::kLiteral, std::move(text), std::move(language),
            std::move(datatype)};
  }
  static Term BlankNode(std::string label) {
    return {Kind::kBlankNode, std::move(label), {}, {}};
  }

  bool operator==(const Term &) const = default;
};

// Unbound variables are absent from the row.
using ResultRow = std::map<std::string, Term>;

struct SparqlResultSet {
  std::vector<std::string> variables;
  std::vector<ResultRow> rows;

  bool operator==(const SparqlResultSet &) const = default;
};

// Errors raised while turning a template into a query.
class InterpolationError : public std::runtime_error {
 public:
  enum class Kind { kArityMismatch, kUnknownPlaceholder };

  InterpolationError(Kind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class EndpointNotAllowed : public std::runtime_error {
 public:
  explicit EndpointNotAllowed(std::string url)
      : std::runtime_error("endpoint is not on the allowlist"),
        url_(std::move(url)) {}

  const std::string &url() const { return url_; }

 private:
  std::string url_;
};

class QueryTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// HTTP error status from the endpoint. Status 0 means no response at all.
class EndpointError : public std::runtime_error {
 public:
  EndpointError(int status, const std::string &message)
      : std::runtime_error(message), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

class MalformedResults : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoEmbedSupport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interpolation {
  std::string sparql;
  std::vector<std::string> warnings;
};

// Substitutes route identifiers into a query body.
//
//   {q}, {q1}     first identifier
//   {qN}          N-th identifier over all segments, 1-based
//   {qs}          "wd:ID wd:ID ..." for every id of the first segment
//   {l}, {lN}, {ls}  aliases of the above
//
// Tokens shaped like a placeholder ("{" letter digits "}" or "{" letter "s}")
// with any other letter raise kUnknownPlaceholder. Supplying identifiers to a
// body without placeholders yields a warning.
Interpolation Interpolate(std::string_view body,
                          std::span<const std::vector<EntityId>> ids_per_segment);

// Convenience overload taking the segments of a route.
Interpolation Interpolate(std::string_view body, const AspectRoute &route);

struct PlaceholderToken {
  std::string token;  // e.g. "{q2}"
  bool known = false; // q/l family with a valid index
};

// Every placeholder-shaped token in a body, in order of appearance.
std::vector<PlaceholderToken> FindPlaceholders(std::string_view body);

// Picks the endpoint for a template. Overrides must match an allowlist entry
// exactly, ignoring trailing slashes; otherwise EndpointNotAllowed.
const EndpointConfig &ResolveEndpoint(const SparqlTemplate &sparql,
                                      const EndpointConfig &default_endpoint,
                                      std::span<const EndpointConfig> allowlist);

// Decodes a SPARQL 1.1 Query Results JSON document.
SparqlResultSet ParseResultsJson(std::string_view json);

// Encodes a result set as SPARQL 1.1 Query Results JSON.
std::string SerializeResultsJson(const SparqlResultSet &results);

// embed_url + "#" + percent-encoded query.
std::string EmbedUrl(const EndpointConfig &endpoint, std::string_view sparql);

// Builds the SPARQL Protocol request: GET when the encoded query fits in
// kMaxGetQueryBytes, otherwise a form-encoded POST.
HttpRequest BuildQueryRequest(const EndpointConfig &endpoint,
                              std::string_view sparql,
                              std::chrono::milliseconds timeout);

inline constexpr size_t kMaxGetQueryBytes = 2000;
inline constexpr std::chrono::seconds kDefaultQueryTimeout{30};
inline constexpr int kDefaultPerEndpointConcurrency = 4;

// Executes queries through a transport, allowing at most a fixed number of
// requests in flight per endpoint.
class SparqlGateway {
 public:
  explicit SparqlGateway(std::shared_ptr<HttpTransport> transport,
                         int per_endpoint_limit = kDefaultPerEndpointConcurrency);

  // Throws QueryTimeout, EndpointError or MalformedResults.
  SparqlResultSet Execute(std::string_view sparql, const EndpointConfig &endpoint,
                          std::chrono::milliseconds timeout);

 private:
  class Slots {
   public:
    explicit Slots(int limit) : free_(limit) {}
    void Acquire();
    void Release();

   private:
    std::mutex mu_;
    std::condition_variable cv_;
    int free_;
  };

  Slots &SlotsFor(const std::string &query_url);

  std::shared_ptr<HttpTransport> transport_;
  int limit_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Slots>> slots_;
};

}  // namespace wikidash

#endif  // WIKIDASH_SPARQL_H_
