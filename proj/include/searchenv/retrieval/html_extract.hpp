#pragma once

#include <string>
#include <string_view>

#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

struct ExtractedText {
  std::string title;
  std::string body;  // paragraphs separated by '\n'
};

/// Readability-style text extraction.
///
/// Markup is dropped together with the contents of script, style and
/// similar raw-text elements and of navigation chrome (nav, header, footer,
/// aside, form, ...). The remaining text is cut into blocks at block-level
/// tags. If the page has <article> or <main>, only blocks inside it are
/// considered. A block survives when at most half of its characters are
/// link text; blocks outside p/h1-h6/li/td/th/pre/blockquote/dd/dt/
/// figcaption also need kMinLooseBlockChars characters. Whitespace is
/// collapsed inside a block and surviving blocks are joined with '\n'.
ExtractedText extract_html(std::string_view html);

inline constexpr std::size_t kMinLooseBlockChars = 25;

/// Builds the page snapshot (document windows, digest) for fetched HTML.
PageSnapshot snapshot_from_html(const std::string& url, std::string html,
                                std::string fetched_at);

/// Escapes &, < and > for embedding text in HTML.
std::string html_escape(std::string_view text);

}  // namespace searchenv
