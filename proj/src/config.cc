#include "wikidash/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wikidash/url.h"

namespace wikidash {

using json = nlohmann::json;

namespace {

const json &Require(const json &object, const char *key, const std::string &where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ConfigError(where + ": missing key \"" + key + "\"");
  }
  return *it;
}

std::string RequireString(const json &object, const char *key,
                          const std::string &where) {
  const json &value = Require(object, key, where);
  if (!value.is_string()) {
    throw ConfigError(where + "." + key + " must be a string");
  }
  return value.get<std::string>();
}

EndpointConfig EndpointFromJson(const json &value, const std::string &where) {
  if (!value.is_object()) throw ConfigError(where + " must be an object");
  EndpointConfig endpoint;
  endpoint.query_url = RequireString(value, "query_url", where);
  endpoint.label = RequireString(value, "label", where);
  if (auto it = value.find("embed_url"); it != value.end() && !it->is_null()) {
    if (!it->is_string()) throw ConfigError(where + ".embed_url must be a string");
    endpoint.embed_url = it->get<std::string>();
  }
  return endpoint;
}

json EndpointToJson(const EndpointConfig &endpoint) {
  json out;
  out["query_url"] = endpoint.query_url;
  out["embed_url"] = endpoint.embed_url;
  out["label"] = endpoint.label;
  return out;
}

int OptionalInt(const json &object, const char *key, int fallback) {
  auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ConfigError(std::string(key) + " must be an integer");
  }
  return it->get<int>();
}

}  // namespace

void SiteConfig::Validate() const {
  try {
    wiki.Validate();
    default_endpoint.Validate();
    for (const auto &entry : allowlist) entry.Validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  if (allowlist.empty()) throw ConfigError("allowlist must not be empty");
  std::string wanted = NormalizeEndpointUrl(default_endpoint.query_url);
  bool listed = false;
  for (const auto &entry : allowlist) {
    if (NormalizeEndpointUrl(entry.query_url) == wanted) listed = true;
  }
  if (!listed) throw ConfigError("default_endpoint must be on the allowlist");
  if (cache_ttl_seconds < 0) throw ConfigError("cache_ttl_seconds must be >= 0");
  if (query_timeout_seconds <= 0) {
    throw ConfigError("query_timeout_seconds must be > 0");
  }
  ListenPort();
}

std::string SiteConfig::ListenHost() const {
  auto colon = listen_address.rfind(':');
  if (colon == std::string::npos) return listen_address;
  return listen_address.substr(0, colon);
}

int SiteConfig::ListenPort() const {
  auto colon = listen_address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw ConfigError("listen_address must be host:port, got \"" +
                      listen_address + "\"");
  }
  std::string_view port(listen_address);
  port.remove_prefix(colon + 1);
  int value = -1;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value < 0 ||
      value > 65535) {
    throw ConfigError("invalid port in listen_address \"" + listen_address + "\"");
  }
  return value;
}

SiteConfig DefaultSiteConfig() {
  SiteConfig config;
  config.wiki = {"https://www.wikidata.org/w", "Wikidata:Synia:"};
  config.default_endpoint = {"https://query.wikidata.org/sparql",
                             "https://query.wikidata.org/embed.html",
                             "Wikidata Query Service"};
  config.allowlist = {config.default_endpoint,
                      {"https://wikifcd.wikibase.cloud/query/sparql",
                       "https://wikifcd.wikibase.cloud/query/embed.html",
                       "WikiFCD Query Service"}};
  return config;
}

SiteConfig ParseSiteConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SiteConfig config;
  const json &wiki = Require(doc, "wiki", "config");
  if (!wiki.is_object()) throw ConfigError("wiki must be an object");
  config.wiki.base_url = RequireString(wiki, "base_url", "wiki");
  config.wiki.namespace_prefix = RequireString(wiki, "namespace_prefix", "wiki");

  config.default_endpoint =
      EndpointFromJson(Require(doc, "default_endpoint", "config"), "default_endpoint");

  const json &allowlist = Require(doc, "allowlist", "config");
  if (!allowlist.is_array()) throw ConfigError("allowlist must be an array");
  for (size_t i = 0; i < allowlist.size(); ++i) {
    config.allowlist.push_back(
        EndpointFromJson(allowlist[i], "allowlist[" + std::to_string(i) + "]"));
  }

  config.cache_ttl_seconds = OptionalInt(doc, "cache_ttl_seconds", 300);
  config.query_timeout_seconds = OptionalInt(doc, "query_timeout_seconds", 30);
  if (auto it = doc.find("listen_address"); it != doc.end()) {
    if (!it->is_string()) throw ConfigError("listen_address must be a string");
    config.listen_address = it->get<std::string>();
  }
  config.Validate();
  return config;
}

SiteConfig LoadSiteConfig(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseSiteConfig(text.str());
}

json SiteConfigToJson(const SiteConfig &config) {
  json out;
  out["wiki"] = {{"base_url", config.wiki.base_url},
                 {"namespace_prefix", config.wiki.namespace_prefix}};
  out["default_endpoint"] = EndpointToJson(config.default_endpoint);
  out["allowlist"] = json::array();
  for (const auto &entry : config.allowlist) {
    out["allowlist"].push_back(EndpointToJson(entry));
  }
  out["cache_ttl_seconds"] = config.cache_ttl_seconds;
  out["query_timeout_seconds"] = config.query_timeout_seconds;
  out["listen_address"] = config.listen_address;
  return out;
}

json PublicConfigJson(const SiteConfig &config) {
  json out;
  out["wiki"] = {{"base_url", config.wiki.base_url},
                 {"namespace_prefix", config.wiki.namespace_prefix}};
  out["default_endpoint"] = config.default_endpoint.label;
  out["allowlist"] = json::array();
  for (const auto &entry : config.allowlist) {
    out["allowlist"].push_back(
        {{"label", entry.label}, {"embed_url", entry.embed_url}});
  }
  return out;
}

}  // namespace wikidash
