#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "searchenv/env/page.hpp"
#include "searchenv/env/window.hpp"
#include "searchenv/retrieval/blocklist.hpp"

namespace searchenv {

struct PageSnapshot {
  std::string url;
  std::string fetched_at;
  std::string html_digest;
  std::string raw_html;
  PageDocument document;
};

/// Search and extract backend.
///
/// search() returns at most three results for a query at an offset that is
/// a multiple of three. An empty list means the offset is past the end.
/// Implementations must be safe to call from several sessions at once.
class SearchProvider {
 public:
  virtual ~SearchProvider() = default;

  virtual std::vector<SearchResult> search(const std::string& query,
                                           std::size_t offset) = 0;
  virtual PageSnapshot fetch(const std::string& url) = 0;
};

/// Shared base for providers that can produce the complete ranked list for
/// a query. Filtering happens on the full list, then the window is sliced,
/// so blocked results never leave a hole in a window.
class RankedListProvider : public SearchProvider {
 public:
  explicit RankedListProvider(Blocklist blocklist = {})
      : blocklist_(std::move(blocklist)) {}

  std::vector<SearchResult> search(const std::string& query,
                                   std::size_t offset) final;

  const Blocklist& blocklist() const { return blocklist_; }

 protected:
  virtual std::vector<SearchResult> ranked_results(const std::string& query) = 0;

 private:
  Blocklist blocklist_;
};

}  // namespace searchenv
