#include "searchenv/retrieval/live.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "searchenv/digest.hpp"
#include "searchenv/error.hpp"
#include "searchenv/retrieval/blocklist.hpp"
#include "searchenv/retrieval/html_extract.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

std::pair<std::string, std::string> split_url(const std::string& url) {
  if (!url_host(url)) throw Error(ErrorCode::InvalidInput, "not an absolute URL: " + url);
  const auto scheme_end = url.find("://") + 3;
  const auto path_start = url.find_first_of("/?#", scheme_end);
  if (path_start == std::string::npos) return {url, "/"};
  auto path = url.substr(path_start);
  if (const auto hash = path.find('#'); hash != std::string::npos) path.erase(hash);
  if (path.empty() || path.front() != '/') path.insert(path.begin(), '/');
  return {url.substr(0, path_start), path};
}

LiveProvider::LiveProvider(LiveProviderConfig config, Blocklist blocklist)
    : RankedListProvider(std::move(blocklist)), config_(std::move(config)) {}

std::vector<SearchResult> LiveProvider::ranked_results(const std::string& query) {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(query); it != cache_.end()) return it->second;
  }
  const auto [origin, path] = split_url(config_.endpoint);
  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace("Ocp-Apim-Subscription-Key", key);
  }
  const httplib::Params params{{"q", query},
                               {"count", std::to_string(config_.result_count)},
                               {"offset", "0"},
                               {"mkt", config_.market}};
  auto res = client.Get(path, params, headers);
  if (!res) {
    throw Error(ErrorCode::BackendUnavailable,
                "search request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::BackendUnavailable,
                "search endpoint returned HTTP " + std::to_string(res->status));
  }
  std::vector<SearchResult> results;
  try {
    const auto j = nlohmann::json::parse(res->body);
    if (j.contains("webPages")) {
      for (const auto& item : j["webPages"].value("value", nlohmann::json::array())) {
        SearchResult r;
        r.title = item.value("name", std::string{});
        r.url = item.value("url", std::string{});
        r.snippet = utf8::substr(item.value("snippet", std::string{}), 0,
                                 config_.snippet_chars);
        if (r.title.empty() || !url_host(r.url)) continue;
        results.push_back(std::move(r));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BackendUnavailable,
                std::string("malformed search response: ") + e.what());
  }
  std::lock_guard lock(mu_);
  cache_.emplace(query, results);
  return results;
}

PageSnapshot LiveProvider::fetch(const std::string& url) {
  const auto [origin, path] = split_url(url);
  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  auto res = client.Get(path);
  if (!res) {
    throw Error(ErrorCode::BackendUnavailable,
                "fetch failed for " + url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::BackendUnavailable,
                "fetch of " + url + " returned HTTP " + std::to_string(res->status));
  }
  const auto type = res->get_header_value("Content-Type");
  if (!type.empty() && type.find("html") == std::string::npos) {
    throw Error(ErrorCode::UnsupportedContent, "not an HTML page: " + url + " (" + type + ")");
  }
  return snapshot_from_html(url, std::move(res->body), utc_timestamp());
}

}  // namespace searchenv
