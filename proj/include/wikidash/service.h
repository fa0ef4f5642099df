#ifndef WIKIDASH_SERVICE_H_
#define WIKIDASH_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "wikidash/composer.h"

namespace wikidash {

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Webapp files served from the same origin as the API.
class StaticAssets {
 public:
  explicit StaticAssets(std::filesystem::path root);

  // "/" maps to index.html. 400 for paths escaping the root, 404 for
  // anything not present.
  ApiResponse Serve(std::string_view request_path) const;

  // False for empty, relative, "."/".." segments, backslashes and NULs.
  static bool IsSafePath(std::string_view path);

  const std::filesystem::path &root() const { return root_; }

 private:
  std::filesystem::path root_;
};

// Request handlers, independent of the HTTP server so they can be tested
// directly.
class ApiService {
 public:
  explicit ApiService(std::shared_ptr<Composer> composer);

  // 200 with the page; 400 for malformed fragments; 502 when the template
  // wiki cannot be used.
  ApiResponse GetPage(std::string_view fragment);

  ApiResponse GetConfig() const;

 private:
  std::shared_ptr<Composer> composer_;
};

// HTTP front end: /api/page, /api/config and the static webapp.
class Server {
 public:
  Server(std::shared_ptr<Composer> composer, StaticAssets assets);
  ~Server();

  Server(const Server &) = delete;
  Server &operator=(const Server &) = delete;

  // Binds without serving; returns the port, or -1. Port 0 picks a free one.
  int Bind(const std::string &host, int port);

  // Serves until Stop(). In-flight requests complete before this returns.
  bool Run();

  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wikidash

#endif  // WIKIDASH_SERVICE_H_
