#include "wikidash/cli.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support/fakes.h"
#include "support/loopback.h"

namespace wikidash {
namespace {

using json = nlohmann::json;
using testing::FakeTransport;

constexpr char kWiki[] = "https://wiki.test/w/index.php";
constexpr char kQuery[] = "https://query.test/sparql";

std::shared_ptr<FakeTransport> FixtureTransport() {
  auto transport = std::make_shared<FakeTransport>();
  transport->Route(
      kWiki, testing::FakeWiki({
                 {"Wikidata:Synia:author", testing::ReadFixture("author.wiki")},
                 {"Wikidata:Synia:actor", testing::ReadFixture("actor.wiki")},
                 {"Wikidata:Synia:index", testing::ReadFixture("index.wiki")},
                 {"Wikidata:Synia:lint",
                  "== Lint ==\n"
                  "{{SPARQL|endpoint=https://evil.example/sparql|sparql=SELECT 1}}\n"
                  "{{SPARQL|sparql=SELECT ?x WHERE { ?x ?p wd:{x7} }}}\n"
                  "{{SPARQL|sparql=SELECT 1\n"},
             }));
  transport->Route(kQuery,
                   testing::FakeEndpoint(testing::ReadFixture("author_results.json")));
  return transport;
}

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output Render(std::shared_ptr<HttpTransport> transport, const std::string &fragment,
              RenderFormat format = RenderFormat::kJson) {
  std::ostringstream out, err;
  int code = RenderCommand(testing::TestSiteConfig(), std::move(transport), fragment,
                           format, out, err);
  return {code, out.str(), err.str()};
}

Output Check(std::shared_ptr<HttpTransport> transport, const std::string &title) {
  std::ostringstream out, err;
  int code = CheckTemplateCommand(testing::TestSiteConfig(), std::move(transport), title,
                                  out, err);
  return {code, out.str(), err.str()};
}

TEST(RenderCommandTest, AuthorMatchesGolden) {
  Output result = Render(FixtureTransport(), "#author/Q18618629");
  ASSERT_EQ(result.code, kExitOk) << result.err;
  json doc = json::parse(result.out);
  ASSERT_TRUE(doc.contains("generated_at"));
  doc.erase("generated_at");
  if (std::getenv("WIKIDASH_UPDATE_GOLDEN")) {
    std::ofstream(testing::FixturePath("author_render.golden.json")) << doc.dump(2) << "\n";
  }
  EXPECT_EQ(doc, json::parse(testing::ReadFixture("author_render.golden.json")));
}

TEST(RenderCommandTest, Html) {
  Output result = Render(FixtureTransport(), "#author/Q18618629", RenderFormat::kHtml);
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_EQ(result.out.rfind("<!DOCTYPE html>", 0), 0u);
  EXPECT_NE(result.out.find("<h1>Author</h1>"), std::string::npos);
  EXPECT_NE(result.out.find("Scholia, scientometrics and Wikidata"), std::string::npos);
  EXPECT_NE(result.out.find("href=\"#author/Q21090025\""), std::string::npos);
}

TEST(RenderCommandTest, PageLevelErrors) {
  EXPECT_EQ(Render(FixtureTransport(), "#bogus id").code, kExitMalformedFragment);
  EXPECT_EQ(Render(std::make_shared<FakeTransport>(), "#author/Q1").code,
            kExitWikiUnreachable);
}

TEST(RenderCommandTest, EmptyFragmentIsIndexPage) {
  Output result = Render(FixtureTransport(), "");
  ASSERT_EQ(result.code, kExitOk);
  json doc = json::parse(result.out);
  EXPECT_EQ(doc["template_title"], "Wikidata:Synia:index");
  EXPECT_EQ(doc["route"]["kind"], "index");
  EXPECT_EQ(doc["panels"][0]["type"], "heading");
}

TEST(CheckTemplateCommandTest, ActorPage) {
  Output result = Check(FixtureTransport(), "Wikidata:Synia:actor");
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_EQ(result.out,
            "page: Wikidata:Synia:actor\n"
            "components: 3\n"
            "  1. heading h2 \"Films\"\n"
            "  2. sparql table endpoint=default placeholders={q}\n"
            "  3. sparql graph view=BarChart endpoint=default placeholders={q}\n"
            "warnings: 0\n");
}

TEST(CheckTemplateCommandTest, LintWarnings) {
  Output result = Check(FixtureTransport(), "Wikidata:Synia:lint");
  ASSERT_EQ(result.code, kExitOk);
  EXPECT_NE(result.out.find("components: 4\n"), std::string::npos);
  EXPECT_NE(result.out.find("  2. sparql table endpoint=disallowed placeholders=none\n"),
            std::string::npos);
  EXPECT_NE(result.out.find("warnings: 3\n"), std::string::npos);
  EXPECT_NE(result.out.find("warning: component 2: endpoint override host evil.example "
                            "is not on the allowlist\n"),
            std::string::npos);
  EXPECT_NE(result.out.find("warning: component 3: unknown placeholder {x7}\n"),
            std::string::npos);
  EXPECT_NE(result.out.find("warning: component 4: unterminated-template"),
            std::string::npos);
}

TEST(CheckTemplateCommandTest, MissingAndUnreachable) {
  Output missing = Check(FixtureTransport(), "Wikidata:Synia:nothing");
  EXPECT_EQ(missing.code, kExitPageMissing);
  EXPECT_NE(missing.err.find("action=edit"), std::string::npos);
  EXPECT_EQ(Check(std::make_shared<FakeTransport>(), "Wikidata:Synia:actor").code,
            kExitWikiUnreachable);
}

// The installed binary against a loopback wiki and endpoint.
class CliBinaryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    wiki_.server().Get("/w/index.php", [](const httplib::Request &req,
                                          httplib::Response &res) {
      if (req.get_param_value("action") == "raw" &&
          req.get_param_value("title") == "Wikidata:Synia:author") {
        res.set_content(testing::ReadFixture("author.wiki"), "text/x-wiki");
      } else {
        res.status = 404;
      }
    });
    wiki_.Start();
    endpoint_.server().Get("/sparql", [](const httplib::Request &, httplib::Response &res) {
      res.set_content(testing::ReadFixture("author_results.json"),
                      "application/sparql-results+json");
    });
    endpoint_.Start();

    SiteConfig config = testing::TestSiteConfig();
    config.wiki.base_url = wiki_.base() + "/w";
    config.default_endpoint = {endpoint_.base() + "/sparql", "", "Loopback"};
    config.allowlist = {config.default_endpoint};
    config_path_ = std::filesystem::temp_directory_path() /
                   ("wikidash_cli_test_" + std::to_string(::getpid()) + ".json");
    std::ofstream(config_path_) << SiteConfigToJson(config).dump();
  }

  void TearDown() override { std::filesystem::remove(config_path_); }

  Output Run(const std::string &args, const std::string &env = "") {
    std::string err_path = config_path_.string() + ".err";
    std::string command = env + " " + WIKIDASH_CLI_PATH + " " + args + " 2>" + err_path;
    Output result{-1, "", ""};
    FILE *pipe = ::popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
    int status = ::pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_path);
    std::ostringstream text;
    text << err.rdbuf();
    result.err = text.str();
    std::filesystem::remove(err_path);
    return result;
  }

  testing::LoopbackServer wiki_;
  testing::LoopbackServer endpoint_;
  std::filesystem::path config_path_;
};

TEST_F(CliBinaryTest, RenderJson) {
  Output result = Run("render '#author/Q18618629' --config " + config_path_.string());
  ASSERT_EQ(result.code, 0) << result.err;
  json doc = json::parse(result.out);
  EXPECT_EQ(doc["panels"].size(), 4u);
  EXPECT_EQ(doc["panels"][3]["rows"].size(), 1u);
}

TEST_F(CliBinaryTest, ConfigFromEnvironment) {
  Output result = Run("render '#author/Q18618629'", "SYNIA_CONFIG=" + config_path_.string());
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_EQ(json::parse(result.out)["panels"][3]["endpoint"], "Loopback");
}

TEST_F(CliBinaryTest, ExitCodes) {
  std::string config = " --config " + config_path_.string();
  EXPECT_EQ(Run("render '#bogus id'" + config).code, 2);
  EXPECT_EQ(Run("check-template Wikidata:Synia:author" + config).code, 0);
  EXPECT_EQ(Run("check-template Wikidata:Synia:none" + config).code, 4);
  EXPECT_EQ(Run("render '#author/Q1' --config /nonexistent/x.json").code, 1);
  EXPECT_EQ(Run("render").code, 1);
  EXPECT_EQ(Run("render '#a/Q1' --format xml" + config).code, 1);

  SiteConfig down = LoadSiteConfig(config_path_);
  down.wiki.base_url = "http://127.0.0.1:1/w";
  std::ofstream(config_path_) << SiteConfigToJson(down).dump();
  EXPECT_EQ(Run("render '#author/Q1'" + config).code, 3);
}

}  // namespace
}  // namespace wikidash
