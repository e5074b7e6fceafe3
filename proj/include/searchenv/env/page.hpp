#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "searchenv/env/window.hpp"

namespace searchenv {

/// Extracted text of a page cut into consecutive windows.
/// Invariant: concatenating `windows` yields `body`.
struct PageDocument {
  std::string url;
  std::string title;
  std::string body;
  std::vector<std::string> windows;
};

/// Cuts `body` into in-order, non-overlapping slices of at most
/// `window_size` scalar values. Cuts are hard (mid-sentence if need be).
/// An empty body yields a single empty slice.
std::vector<std::string> paginate_text(std::string_view body,
                                       std::size_t window_size = kWindowChars);

PageDocument make_page_document(std::string url, std::string title,
                                std::string body,
                                std::size_t window_size = kWindowChars);

/// Browsing view of window `index` of `doc`.
PageView page_view(const PageDocument& doc, std::size_t index);

}  // namespace searchenv
