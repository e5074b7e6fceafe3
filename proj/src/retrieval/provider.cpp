#include "searchenv/retrieval/provider.hpp"

#include "searchenv/error.hpp"

namespace searchenv {

namespace {

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::vector<SearchResult> RankedListProvider::search(const std::string& query,
                                                     std::size_t offset) {
  if (is_blank(query)) throw Error(ErrorCode::InvalidQuery, "empty query");
  if (offset % kResultsPerWindow != 0) {
    throw Error(ErrorCode::InvalidInput,
                "offset must be a multiple of 3, got " + std::to_string(offset));
  }
  std::vector<SearchResult> kept;
  for (auto& r : ranked_results(query)) {
    if (!blocklist_.blocks(r.url)) kept.push_back(std::move(r));
  }
  if (offset >= kept.size()) return {};
  const auto end = std::min(kept.size(), offset + kResultsPerWindow);
  return {std::make_move_iterator(kept.begin() + static_cast<std::ptrdiff_t>(offset)),
          std::make_move_iterator(kept.begin() + static_cast<std::ptrdiff_t>(end))};
}

}  // namespace searchenv
