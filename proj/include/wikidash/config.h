#ifndef WIKIDASH_CONFIG_H_
#define WIKIDASH_CONFIG_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wikidash/sparql.h"
#include "wikidash/template_store.h"

namespace wikidash {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Site configuration, read from a JSON file whose keys are the field names:
//
//   {
//     "wiki": {"base_url": "https://www.wikidata.org/w",
//              "namespace_prefix": "Wikidata:Synia:"},
//     "default_endpoint": {"query_url": ..., "embed_url": ..., "label": ...},
//     "allowlist": [ {...}, ... ],
//     "cache_ttl_seconds": 300,
//     "query_timeout_seconds": 30,
//     "listen_address": "127.0.0.1:8080"
//   }
struct SiteConfig {
  WikiSource wiki;
  EndpointConfig default_endpoint;
  std::vector<EndpointConfig> allowlist;
  int cache_ttl_seconds = 300;
  int query_timeout_seconds = 30;
  std::string listen_address = "127.0.0.1:8080";

  // Throws ConfigError.
  void Validate() const;

  std::string ListenHost() const;
  int ListenPort() const;
};

// Wikidata templates under "Wikidata:Synia:", querying WDQS, with the
// WikiFCD query service also allowed.
SiteConfig DefaultSiteConfig();

SiteConfig ParseSiteConfig(std::string_view json_text);
SiteConfig LoadSiteConfig(const std::filesystem::path &path);

nlohmann::json SiteConfigToJson(const SiteConfig &config);

// The subset served to browsers: wiki location and endpoint labels.
nlohmann::json PublicConfigJson(const SiteConfig &config);

}  // namespace wikidash

#endif  // WIKIDASH_CONFIG_H_
