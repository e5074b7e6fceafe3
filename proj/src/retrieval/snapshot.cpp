#include "searchenv/retrieval/snapshot.hpp"

#include "searchenv/digest.hpp"

namespace searchenv {

void to_json(nlohmann::json& j, const SnapshotRef& r) {
  j = nlohmann::json{{"kind", r.kind},
                     {"key", r.key},
                     {"offset", r.offset},
                     {"digest", r.digest},
                     {"fetched_at", r.fetched_at}};
}

void from_json(const nlohmann::json& j, SnapshotRef& r) {
  r.kind = j.at("kind").get<std::string>();
  r.key = j.at("key").get<std::string>();
  r.offset = j.at("offset").get<std::size_t>();
  r.digest = j.at("digest").get<std::string>();
  r.fetched_at = j.at("fetched_at").get<std::string>();
}

SnapshotCache::SnapshotCache(std::shared_ptr<SearchProvider> provider)
    : provider_(std::move(provider)) {}

const std::vector<SearchResult>& SnapshotCache::search(const std::string& query,
                                                       std::size_t offset) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(query, offset);
  if (auto it = searches_.find(key); it != searches_.end()) return it->second;
  auto results = provider_->search(query, offset);
  return searches_.emplace(std::move(key), std::move(results)).first->second;
}

const PageSnapshot& SnapshotCache::page(const std::string& url) {
  std::lock_guard lock(mu_);
  if (auto it = pages_.find(url); it != pages_.end()) return it->second;
  auto snap = provider_->fetch(url);
  return pages_.emplace(url, std::move(snap)).first->second;
}

FixtureCorpus SnapshotCache::corpus() const {
  std::lock_guard lock(mu_);
  FixtureCorpus corpus;
  // Offsets of one query are visited contiguously from 0, so concatenating
  // the slices in offset order rebuilds the list the session saw.
  for (const auto& [key, results] : searches_) {
    auto& list = corpus.searches[key.first];
    list.insert(list.end(), results.begin(), results.end());
  }
  for (const auto& [url, snap] : pages_) corpus.pages[url] = snap.raw_html;
  return corpus;
}

std::vector<SnapshotRef> SnapshotCache::refs() const {
  std::lock_guard lock(mu_);
  std::vector<SnapshotRef> out;
  for (const auto& [key, results] : searches_) {
    out.push_back({"search", key.first, key.second,
                   short_digest(nlohmann::json(results).dump()), ""});
  }
  for (const auto& [url, snap] : pages_) {
    out.push_back({"page", url, 0, snap.html_digest, snap.fetched_at});
  }
  return out;
}

}  // namespace searchenv
