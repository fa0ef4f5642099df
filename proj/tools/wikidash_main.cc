// Command line front end: serve the dashboard API, render single pages, and
// lint template pages.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "wikidash/cli.h"
#include "wikidash/config.h"
#include "wikidash/service.h"

#ifndef WIKIDASH_ASSET_DIR
#define WIKIDASH_ASSET_DIR "assets"
#endif

namespace {

// --config wins; otherwise $SYNIA_CONFIG; otherwise the built-in Wikidata
// configuration.
wikidash::SiteConfig ResolveConfig(const std::string &flag) {
  if (!flag.empty()) return wikidash::LoadSiteConfig(flag);
  if (const char *env = std::getenv("SYNIA_CONFIG"); env && *env) {
    return wikidash::LoadSiteConfig(env);
  }
  return wikidash::DefaultSiteConfig();
}

int Serve(const wikidash::SiteConfig &config, const std::string &assets) {
  // Block termination signals in every thread; a dedicated thread waits for
  // them and stops the server, which drains in-flight requests.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto composer = std::make_shared<wikidash::Composer>(
      config, wikidash::MakeDefaultTransport());
  wikidash::Server server(composer, wikidash::StaticAssets(assets));
  int port = server.Bind(config.ListenHost(), config.ListenPort());
  if (port < 0) {
    std::cerr << "cannot listen on " << config.listen_address << "\n";
    return wikidash::kExitUsage;
  }
  std::cerr << "serving on http://" << config.ListenHost() << ":" << port << "/\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  bool ok = server.Run();
  // Wake the waiter if the server ended on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? wikidash::kExitOk : wikidash::kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Wiki-driven SPARQL dashboard engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string assets = WIKIDASH_ASSET_DIR;
  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config_path, "Site configuration file");
  serve->add_option("--assets", assets, "Directory with the webapp files");

  std::string fragment;
  std::string format = "json";
  auto *render = app.add_subcommand("render", "Render one page to standard output");
  render->add_option("fragment", fragment, "URI fragment, e.g. \"#author/Q18618629\"")
      ->required();
  render->add_option("--config", config_path, "Site configuration file");
  render->add_option("--format", format, "json or html")
      ->check(CLI::IsMember({"json", "html"}));

  std::string title;
  auto *check = app.add_subcommand("check-template", "Lint a template wikipage");
  check->add_option("title", title, "Page title, e.g. \"Wikidata:Synia:actor\"")
      ->required();
  check->add_option("--config", config_path, "Site configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? wikidash::kExitOk : wikidash::kExitUsage;
  }

  wikidash::SiteConfig config;
  try {
    config = ResolveConfig(config_path);
  } catch (const wikidash::ConfigError &e) {
    std::cerr << e.what() << "\n";
    return wikidash::kExitUsage;
  }

  if (*serve) return Serve(config, assets);
  if (*render) {
    auto fmt = format == "html" ? wikidash::RenderFormat::kHtml
                                : wikidash::RenderFormat::kJson;
    return wikidash::RenderCommand(config, wikidash::MakeDefaultTransport(),
                                   fragment, fmt, std::cout, std::cerr);
  }
  return wikidash::CheckTemplateCommand(config, wikidash::MakeDefaultTransport(),
                                        title, std::cout, std::cerr);
}
