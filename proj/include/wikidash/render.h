#ifndef WIKIDASH_RENDER_H_
#define WIKIDASH_RENDER_H_

#include <string>
#include <string_view>

#include <json.hpp>

#include "wikidash/composer.h"

namespace wikidash {

// Structured form of a rendered page, as served by /api/page.
nlohmann::json PageToJson(const RenderedPage &page);

// Minimal standalone HTML view of a page, for debugging from the CLI.
std::string PageToHtml(const RenderedPage &page);

// {"error": {"kind": ..., "message": ...}}
nlohmann::json ErrorJson(std::string_view kind, std::string_view message);

std::string HtmlEscape(std::string_view text);

// ISO 8601 UTC timestamp with second precision.
std::string FormatTimestamp(TimePoint time);

}  // namespace wikidash

#endif  // WIKIDASH_RENDER_H_
