#include "wikidash/http.h"

#include <httplib.h>

#include "wikidash/url.h"

namespace wikidash {

HttplibTransport::HttplibTransport(std::string user_agent)
    : user_agent_(std::move(user_agent)) {}

HttpResponse HttplibTransport::Send(const HttpRequest &request) {
  auto url = ParseHttpUrl(request.url);
  if (!url) {
    throw TransportError(TransportError::Kind::kConnection,
                         "not an absolute http(s) URL: " + request.url);
  }

  std::string origin = url->scheme + "://" + url->host + ":" + std::to_string(url->port);
  httplib::Client client(origin);
  client.set_url_encode(false);
  client.set_follow_location(false);
  client.set_keep_alive(false);

  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      request.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers{{"User-Agent", user_agent_}};
  for (const auto &[name, value] : request.headers) headers.emplace(name, value);

  std::string target = url->path;
  if (!url->query.empty()) target += "?" + url->query;

  auto started = std::chrono::steady_clock::now();
  httplib::Result result =
      request.method == "POST"
          ? client.Post(target, headers, request.body, request.content_type)
          : client.Get(target, headers);

  if (!result) {
    auto error = result.error();
    auto elapsed = std::chrono::steady_clock::now() - started;
    // httplib reports an expired read deadline as a plain read error.
    bool timed_out = error == httplib::Error::ConnectionTimeout ||
                     (error == httplib::Error::Read && elapsed >= request.timeout);
    throw TransportError(
        timed_out ? TransportError::Kind::kTimeout : TransportError::Kind::kConnection,
        httplib::to_string(error) + " (" + url->host + ")");
  }

  HttpResponse response;
  response.status = result->status;
  response.body = std::move(result->body);
  response.content_type = result->get_header_value("Content-Type");
  return response;
}

std::shared_ptr<HttpTransport> MakeDefaultTransport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace wikidash
