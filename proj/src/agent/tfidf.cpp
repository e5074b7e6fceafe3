#include "searchenv/agent/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "searchenv/env/window.hpp"
#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

namespace {

using Counts = std::map<std::u32string, double>;

Counts bigrams(const std::string& text) {
  Counts out;
  const auto s = utf8::decode(text);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out[s.substr(i, 2)] += 1;
  return out;
}

}  // namespace

std::vector<ScoredParagraph> rank_paragraphs(const std::string& question,
                                             const std::vector<std::string>& paragraphs) {
  std::vector<Counts> docs;
  docs.reserve(paragraphs.size());
  std::map<std::u32string, std::size_t> df;
  for (const auto& p : paragraphs) {
    docs.push_back(bigrams(p));
    for (const auto& [term, _] : docs.back()) ++df[term];
  }
  const auto n = static_cast<double>(paragraphs.size());
  auto idf = [&](const std::u32string& term) {
    const auto it = df.find(term);
    return it == df.end() ? 0.0 : std::log(1.0 + n / static_cast<double>(it->second));
  };

  Counts q = bigrams(question);
  double q_norm = 0;
  for (auto& [term, w] : q) {
    w *= idf(term);
    q_norm += w * w;
  }
  q_norm = std::sqrt(q_norm);

  std::vector<ScoredParagraph> out;
  out.reserve(paragraphs.size());
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    double dot = 0;
    double d_norm = 0;
    for (const auto& [term, tf] : docs[i]) {
      const double w = tf * idf(term);
      d_norm += w * w;
      if (const auto it = q.find(term); it != q.end()) dot += w * it->second;
    }
    d_norm = std::sqrt(d_norm);
    const double score = (q_norm > 0 && d_norm > 0) ? dot / (q_norm * d_norm) : 0.0;
    out.push_back({paragraphs[i], score, i});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  return out;
}

std::vector<std::string> take_within_budget(const std::vector<ScoredParagraph>& ranked,
                                            std::size_t budget) {
  std::vector<std::string> out;
  std::size_t used = 0;
  for (const auto& p : ranked) {
    const auto len = utf8::length(p.text);
    if (used + len > budget) break;
    used += len;
    out.push_back(p.text);
  }
  return out;
}

std::vector<std::string> tfidf_baseline_retrieve(const std::string& question,
                                                 SearchProvider& provider,
                                                 const TfidfOptions& options) {
  if (options.budget == 0) throw Error(ErrorCode::InvalidInput, "budget must be positive");
  std::vector<SearchResult> results;
  for (std::size_t offset = 0; results.size() < options.max_results; offset += kResultsPerWindow) {
    auto page = provider.search(question, offset);
    if (page.empty()) break;
    results.insert(results.end(), page.begin(), page.end());
  }
  if (results.size() > options.max_results) results.resize(options.max_results);

  std::vector<std::string> paragraphs;
  std::set<std::string> seen_urls;
  for (const auto& r : results) {
    if (!seen_urls.insert(r.url).second) continue;
    std::string body;
    try {
      body = provider.fetch(r.url).document.body;
    } catch (const Error&) {
      continue;
    }
    std::size_t start = 0;
    while (start <= body.size()) {
      auto nl = body.find('\n', start);
      if (nl == std::string::npos) nl = body.size();
      auto line = body.substr(start, nl - start);
      if (line.find_first_not_of(" \t\r") != std::string::npos) paragraphs.push_back(line);
      start = nl + 1;
    }
  }
  return take_within_budget(rank_paragraphs(question, paragraphs), options.budget);
}

}  // namespace searchenv
