#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace searchenv {

inline constexpr std::size_t kWindowChars = 500;
inline constexpr std::size_t kResultsPerWindow = 3;

enum class Mode { Search, Browsing };

std::string_view mode_name(Mode mode);

struct SearchResult {
  std::string title;
  std::string url;
  std::string snippet;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Up to three results of `query` starting at `offset`. `has_more` records
/// whether the next offset returned anything when the view was built.
struct SearchView {
  std::string query;
  std::size_t offset = 0;
  std::vector<SearchResult> results;
  bool has_more = false;

  friend bool operator==(const SearchView&, const SearchView&) = default;
};

/// One slice of an extracted page. `index` counts windows, `char_offset`
/// is the slice's position in the page body.
struct PageView {
  std::string url;
  std::string title;
  std::size_t index = 0;
  std::size_t count = 1;
  std::size_t char_offset = 0;
  std::string text;

  friend bool operator==(const PageView&, const PageView&) = default;
};

using Window = std::variant<SearchView, PageView>;

inline Mode window_mode(const Window& w) {
  return std::holds_alternative<SearchView>(w) ? Mode::Search : Mode::Browsing;
}

void to_json(nlohmann::json& j, const SearchResult& r);
void from_json(const nlohmann::json& j, SearchResult& r);
nlohmann::json window_to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

}  // namespace searchenv
