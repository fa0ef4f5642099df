#ifndef WIKIDASH_CLI_H_
#define WIKIDASH_CLI_H_

#include <memory>
#include <ostream>
#include <string>

#include "wikidash/config.h"
#include "wikidash/http.h"

namespace wikidash {

// Exit codes shared by the subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // bad arguments or unreadable config
  kExitMalformedFragment = 2,
  kExitWikiUnreachable = 3,
  kExitPageMissing = 4,
};

enum class RenderFormat { kJson, kHtml };

// Renders one page to `out`. Diagnostics go to `err`.
int RenderCommand(const SiteConfig &config, std::shared_ptr<HttpTransport> transport,
                  const std::string &fragment, RenderFormat format,
                  std::ostream &out, std::ostream &err);

// Lints a template page: lists its components, placeholders and endpoint
// overrides, and warns about anything that would render as an error.
int CheckTemplateCommand(const SiteConfig &config,
                         std::shared_ptr<HttpTransport> transport,
                         const std::string &title, std::ostream &out,
                         std::ostream &err);

}  // namespace wikidash

#endif  // WIKIDASH_CLI_H_
