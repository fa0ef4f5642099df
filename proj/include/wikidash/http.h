#ifndef WIKIDASH_HTTP_H_
#define WIKIDASH_HTTP_H_

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wikidash {

using Headers = std::vector<std::pair<std::string, std::string>>;

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // absolute
  Headers headers;
  std::string body;
  std::string content_type;
  std::chrono::milliseconds timeout{30000};
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::string content_type;
};

// Raised by transports when no HTTP response was obtained at all.
class TransportError : public std::runtime_error {
 public:
  enum class Kind { kTimeout, kConnection };

  TransportError(Kind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Every outbound request of the engine goes through a transport. Tests swap
// in a recording fake; production uses HttplibTransport.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;

  // Performs one request. Returns any HTTP response (including 4xx/5xx);
  // throws TransportError when the exchange itself failed.
  virtual HttpResponse Send(const HttpRequest &request) = 0;
};

// Transport backed by cpp-httplib. Redirects are not followed, so a request
// never reaches a host other than the one in its URL.
class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::string user_agent = "wikidash/0.1");

  HttpResponse Send(const HttpRequest &request) override;

 private:
  std::string user_agent_;
};

std::shared_ptr<HttpTransport> MakeDefaultTransport();

}  // namespace wikidash

#endif  // WIKIDASH_HTTP_H_
