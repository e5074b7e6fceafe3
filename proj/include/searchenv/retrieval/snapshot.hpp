#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "searchenv/retrieval/fixture.hpp"
#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

/// Reference to a stored snapshot, as persisted in trajectories.
struct SnapshotRef {
  std::string kind;  // "search" or "page"
  std::string key;   // query or url
  std::size_t offset = 0;
  std::string digest;
  std::string fetched_at;

  friend bool operator==(const SnapshotRef&, const SnapshotRef&) = default;
};

void to_json(nlohmann::json& j, const SnapshotRef& r);
void from_json(const nlohmann::json& j, SnapshotRef& r);

/// Per-session, append-only record of every backend response. Each
/// (query, offset) and each url hits the provider at most once; later
/// lookups are served from the cache, which makes repeated searches and
/// reloads deterministic within a session.
class SnapshotCache {
 public:
  explicit SnapshotCache(std::shared_ptr<SearchProvider> provider);

  const std::vector<SearchResult>& search(const std::string& query,
                                          std::size_t offset);
  const PageSnapshot& page(const std::string& url);

  /// Everything seen so far as a fixture corpus, suitable for replay.
  FixtureCorpus corpus() const;
  std::vector<SnapshotRef> refs() const;

 private:
  std::shared_ptr<SearchProvider> provider_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::size_t>, std::vector<SearchResult>> searches_;
  std::map<std::string, PageSnapshot> pages_;
};

}  // namespace searchenv
