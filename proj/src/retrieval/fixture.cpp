#include "searchenv/retrieval/fixture.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "searchenv/digest.hpp"
#include "searchenv/error.hpp"
#include "searchenv/retrieval/html_extract.hpp"

namespace searchenv {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFixtureFetchTime = "1970-01-01T00:00:00Z";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  const auto tmp = fs::path(p.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + p.string());
    out << content;
  }
  fs::rename(tmp, p);
}

}  // namespace

void write_fixture_corpus(const fs::path& dir, const FixtureCorpus& corpus) {
  fs::create_directories(dir / "search");
  fs::create_directories(dir / "pages");
  for (const auto& [query, results] : corpus.searches) {
    const nlohmann::json j{{"query", query}, {"results", results}};
    write_file(dir / "search" / (short_digest(query) + ".json"), j.dump(1) + "\n");
  }
  for (const auto& [url, html] : corpus.pages) {
    write_file(dir / "pages" / (short_digest(url) + ".html"), html);
  }
}

FixtureProvider::FixtureProvider(FixtureCorpus corpus, Blocklist blocklist)
    : RankedListProvider(std::move(blocklist)), corpus_(std::move(corpus)) {}

FixtureProvider::FixtureProvider(fs::path dir, Blocklist blocklist)
    : RankedListProvider(std::move(blocklist)), dir_(std::move(dir)) {
  if (!fs::is_directory(*dir_)) {
    throw Error(ErrorCode::BackendUnavailable,
                "fixture corpus directory not found: " + dir_->string());
  }
}

std::vector<SearchResult> FixtureProvider::ranked_results(const std::string& query) {
  if (!dir_) {
    const auto it = corpus_.searches.find(query);
    return it == corpus_.searches.end() ? std::vector<SearchResult>{} : it->second;
  }
  const auto path = *dir_ / "search" / (short_digest(query) + ".json");
  if (!fs::exists(path)) return {};
  try {
    const auto j = nlohmann::json::parse(read_file(path));
    return j.at("results").get<std::vector<SearchResult>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BackendUnavailable,
                "corrupt fixture " + path.string() + ": " + e.what());
  }
}

PageSnapshot FixtureProvider::fetch(const std::string& url) {
  if (!dir_) {
    const auto it = corpus_.pages.find(url);
    if (it == corpus_.pages.end()) {
      throw Error(ErrorCode::BackendUnavailable, "page not in fixture corpus: " + url);
    }
    return snapshot_from_html(url, it->second, kFixtureFetchTime);
  }
  const auto stem = short_digest(url);
  const auto html = *dir_ / "pages" / (stem + ".html");
  if (fs::exists(html)) return snapshot_from_html(url, read_file(html), kFixtureFetchTime);
  if (fs::is_directory(*dir_ / "pages")) {
    for (const auto& entry : fs::directory_iterator(*dir_ / "pages")) {
      if (entry.path().stem() == stem) {
        throw Error(ErrorCode::UnsupportedContent,
                    "not an HTML page: " + url + " (" +
                        entry.path().extension().string() + ")");
      }
    }
  }
  throw Error(ErrorCode::BackendUnavailable, "page not in fixture corpus: " + url);
}

}  // namespace searchenv
