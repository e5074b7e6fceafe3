#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

/// Offline corpus: full ranked result lists keyed by query, raw HTML keyed
/// by URL.
///
/// On disk:
///   <dir>/search/<short_digest(query)>.json   {"query": ..., "results": [...]}
///   <dir>/pages/<short_digest(url)>.html      raw HTML
/// A page stored under any other extension is treated as non-HTML content.
struct FixtureCorpus {
  std::map<std::string, std::vector<SearchResult>> searches;
  std::map<std::string, std::string> pages;
};

/// Writes (or merges into) a corpus directory. Existing files for the same
/// key are overwritten; nothing is deleted.
void write_fixture_corpus(const std::filesystem::path& dir,
                          const FixtureCorpus& corpus);

/// Deterministic provider over a FixtureCorpus held in memory or read
/// lazily from a directory. Snippets are returned verbatim. Pages carry a
/// fixed epoch fetch time so replays are byte-stable.
class FixtureProvider final : public RankedListProvider {
 public:
  explicit FixtureProvider(FixtureCorpus corpus, Blocklist blocklist = {});
  explicit FixtureProvider(std::filesystem::path dir, Blocklist blocklist = {});

  PageSnapshot fetch(const std::string& url) override;

 protected:
  std::vector<SearchResult> ranked_results(const std::string& query) override;

 private:
  FixtureCorpus corpus_;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace searchenv
