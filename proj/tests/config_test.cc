#include "wikidash/config.h"

#include <gtest/gtest.h>

#include "support/fakes.h"

namespace wikidash {
namespace {

constexpr char kMinimal[] = R"({
  "wiki": {"base_url": "https://wiki.test/w", "namespace_prefix": "Wikidata:Synia:"},
  "default_endpoint": {"query_url": "https://query.test/sparql",
                       "embed_url": "https://query.test/embed.html", "label": "Q"},
  "allowlist": [{"query_url": "https://query.test/sparql/",
                 "embed_url": "https://query.test/embed.html", "label": "Q"}]
})";

TEST(SiteConfigTest, ParsesWithDefaults) {
  SiteConfig config = ParseSiteConfig(kMinimal);
  EXPECT_EQ(config.wiki.base_url, "https://wiki.test/w");
  EXPECT_EQ(config.wiki.namespace_prefix, "Wikidata:Synia:");
  EXPECT_EQ(config.default_endpoint.label, "Q");
  EXPECT_EQ(config.allowlist.size(), 1u);
  EXPECT_EQ(config.cache_ttl_seconds, 300);
  EXPECT_EQ(config.query_timeout_seconds, 30);
  EXPECT_EQ(config.ListenHost(), "127.0.0.1");
  EXPECT_EQ(config.ListenPort(), 8080);
}

TEST(SiteConfigTest, JsonRoundTrip) {
  SiteConfig config = testing::TestSiteConfig();
  SiteConfig again = ParseSiteConfig(SiteConfigToJson(config).dump());
  EXPECT_EQ(SiteConfigToJson(again), SiteConfigToJson(config));
}

TEST(SiteConfigTest, RejectsInvalidDocuments) {
  auto with = [](const std::string &key, nlohmann::json value) {
    auto doc = nlohmann::json::parse(kMinimal);
    doc[key] = std::move(value);
    return doc.dump();
  };
  EXPECT_THROW(ParseSiteConfig("{"), ConfigError);
  EXPECT_THROW(ParseSiteConfig("[]"), ConfigError);
  EXPECT_THROW(ParseSiteConfig("{}"), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("cache_ttl_seconds", -1)), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("query_timeout_seconds", 0)), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("query_timeout_seconds", "30")), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("listen_address", "localhost")), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("listen_address", "localhost:99999")), ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("allowlist", nlohmann::json::array())), ConfigError);
  // The default endpoint must be allowlisted.
  EXPECT_THROW(ParseSiteConfig(with("allowlist", nlohmann::json::array(
                                                     {{{"query_url", "https://o.test/s"},
                                                       {"label", "O"}}}))),
               ConfigError);
  EXPECT_THROW(ParseSiteConfig(with("wiki", {{"base_url", "ftp://wiki.test"},
                                             {"namespace_prefix", "X:"}})),
               ConfigError);
  EXPECT_THROW(LoadSiteConfig("/nonexistent/config.json"), ConfigError);
}

TEST(SiteConfigTest, ZeroTtlIsAllowed) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc["cache_ttl_seconds"] = 0;
  EXPECT_EQ(ParseSiteConfig(doc.dump()).cache_ttl_seconds, 0);
}

TEST(SiteConfigTest, DefaultConfig) {
  SiteConfig config = DefaultSiteConfig();
  EXPECT_NO_THROW(config.Validate());
  EXPECT_EQ(config.wiki.namespace_prefix, "Wikidata:Synia:");
  EXPECT_EQ(config.default_endpoint.query_url, "https://query.wikidata.org/sparql");
  EXPECT_EQ(config.allowlist.size(), 2u);
}

TEST(SiteConfigTest, BundledConfigFiles) {
  std::filesystem::path dir = WIKIDASH_CONFIG_DIR;
  SiteConfig wikidata = LoadSiteConfig(dir / "wikidata.json");
  EXPECT_EQ(SiteConfigToJson(wikidata), SiteConfigToJson(DefaultSiteConfig()));
  SiteConfig clone = LoadSiteConfig(dir / "wikifcd-clone.json");
  EXPECT_EQ(clone.wiki.namespace_prefix, "User:Fnielsen:Synia:");
  EXPECT_EQ(clone.default_endpoint.label, "WikiFCD Query Service");
}

TEST(PublicConfigJsonTest, Shape) {
  auto doc = PublicConfigJson(DefaultSiteConfig());
  EXPECT_EQ(doc["wiki"]["namespace_prefix"], "Wikidata:Synia:");
  ASSERT_EQ(doc["allowlist"].size(), 2u);
  EXPECT_EQ(doc["allowlist"][0]["label"], "Wikidata Query Service");
  EXPECT_EQ(doc["allowlist"][1]["label"], "WikiFCD Query Service");
  EXPECT_FALSE(doc["allowlist"][0].contains("query_url"));
}

}  // namespace
}  // namespace wikidash
