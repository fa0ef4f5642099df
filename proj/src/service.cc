#include "wikidash/service.h"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "wikidash/render.h"
#include "wikidash/url.h"

namespace wikidash {

namespace {

std::string MimeType(const std::filesystem::path &path) {
  std::string ext = path.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  return "application/octet-stream";
}

ApiResponse JsonResponse(int status, const nlohmann::json &body) {
  return {status, body.dump(), "application/json"};
}

}  // namespace

StaticAssets::StaticAssets(std::filesystem::path root) : root_(std::move(root)) {}

bool StaticAssets::IsSafePath(std::string_view path) {
  if (path.empty() || path.front() != '/') return false;
  size_t start = 1;
  while (start <= path.size()) {
    size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    std::string_view segment = path.substr(start, end - start);
    if (segment == "." || segment == "..") return false;
    start = end + 1;
  }
  return path.find('\\') == std::string_view::npos &&
         path.find('\0') == std::string_view::npos;
}

ApiResponse StaticAssets::Serve(std::string_view request_path) const {
  std::string path = PercentDecode(request_path);
  if (!IsSafePath(path)) {
    return JsonResponse(400, ErrorJson("bad-path", "path rejected"));
  }
  if (path.back() == '/') path += "index.html";

  std::filesystem::path file = root_ / std::filesystem::path(path).relative_path();
  std::error_code ec;
  if (!std::filesystem::is_regular_file(file, ec)) {
    return JsonResponse(404, ErrorJson("not-found", "no such asset"));
  }
  std::ifstream in(file, std::ios::binary);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return {200, bytes.str(), MimeType(file)};
}

ApiService::ApiService(std::shared_ptr<Composer> composer)
    : composer_(std::move(composer)) {}

ApiResponse ApiService::GetPage(std::string_view fragment) {
  try {
    return JsonResponse(200, PageToJson(composer_->Compose(fragment)));
  } catch (const MalformedFragment &e) {
    return JsonResponse(400, ErrorJson("malformed-fragment", e.what()));
  } catch (const WikiUnreachable &e) {
    return JsonResponse(502, ErrorJson("wiki-unreachable", e.what()));
  } catch (const WikiProtocolError &e) {
    return JsonResponse(502, ErrorJson("wiki-protocol-error", e.what()));
  } catch (const std::exception &e) {
    return JsonResponse(500, ErrorJson("internal", e.what()));
  }
}

ApiResponse ApiService::GetConfig() const {
  return JsonResponse(200, PublicConfigJson(composer_->config()));
}

struct Server::Impl {
  ApiService api;
  StaticAssets assets;
  httplib::Server http;
  std::string host;
  int port = -1;

  Impl(std::shared_ptr<Composer> composer, StaticAssets static_assets)
      : api(std::move(composer)), assets(std::move(static_assets)) {}
};

namespace {

void Reply(httplib::Response &res, const ApiResponse &response) {
  res.status = response.status;
  res.set_content(response.body, response.content_type);
  res.set_header("X-Content-Type-Options", "nosniff");
  res.set_header("Referrer-Policy", "no-referrer");
}

}  // namespace

Server::Server(std::shared_ptr<Composer> composer, StaticAssets assets)
    : impl_(std::make_unique<Impl>(std::move(composer), std::move(assets))) {
  Impl *impl = impl_.get();
  impl->http.Get("/api/page", [impl](const httplib::Request &req,
                                     httplib::Response &res) {
    Reply(res, impl->api.GetPage(req.get_param_value("fragment")));
  });
  impl->http.Get("/api/config", [impl](const httplib::Request &,
                                       httplib::Response &res) {
    Reply(res, impl->api.GetConfig());
  });
  impl->http.Get(R"(/.*)", [impl](const httplib::Request &req,
                                  httplib::Response &res) {
    Reply(res, impl->assets.Serve(req.path));
  });
}

Server::~Server() { Stop(); }

int Server::Bind(const std::string &host, int port) {
  impl_->host = host;
  impl_->port = port == 0 ? impl_->http.bind_to_any_port(host)
                          : (impl_->http.bind_to_port(host, port) ? port : -1);
  return impl_->port;
}

bool Server::Run() { return impl_->http.listen_after_bind(); }

void Server::Stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace wikidash
