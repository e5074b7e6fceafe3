#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

struct LiveProviderConfig {
  /// Web-search endpoint speaking the Bing v7 JSON shape
  /// ({"webPages": {"value": [{"name", "url", "snippet"}]}}).
  std::string endpoint = "https://api.bing.microsoft.com/v7.0/search";
  /// Environment variable holding the subscription key. The key is read at
  /// request time and never stored anywhere else.
  std::string api_key_env = "SEARCH_API_KEY";
  std::string market = "zh-CN";
  std::size_t result_count = 50;
  std::size_t snippet_chars = 100;
  int timeout_seconds = 10;
};

/// Splits an absolute URL into ("scheme://host[:port]", "/path?query").
std::pair<std::string, std::string> split_url(const std::string& url);

class LiveProvider final : public RankedListProvider {
 public:
  explicit LiveProvider(LiveProviderConfig config, Blocklist blocklist = {});

  PageSnapshot fetch(const std::string& url) override;

 protected:
  std::vector<SearchResult> ranked_results(const std::string& query) override;

 private:
  LiveProviderConfig config_;
  std::mutex mu_;
  std::map<std::string, std::vector<SearchResult>> cache_;
};

}  // namespace searchenv
