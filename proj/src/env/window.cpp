#include "searchenv/env/window.hpp"

#include "searchenv/env/page.hpp"
#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

std::string_view mode_name(Mode mode) {
  return mode == Mode::Search ? "search" : "browsing";
}

void to_json(nlohmann::json& j, const SearchResult& r) {
  j = nlohmann::json{{"title", r.title}, {"url", r.url}, {"snippet", r.snippet}};
}

void from_json(const nlohmann::json& j, SearchResult& r) {
  r.title = j.at("title").get<std::string>();
  r.url = j.at("url").get<std::string>();
  r.snippet = j.value("snippet", std::string{});
}

nlohmann::json window_to_json(const Window& w) {
  if (const auto* s = std::get_if<SearchView>(&w)) {
    return {{"mode", "search"},
            {"query", s->query},
            {"offset", s->offset},
            {"results", s->results},
            {"has_more", s->has_more}};
  }
  const auto& p = std::get<PageView>(w);
  return {{"mode", "browsing"}, {"url", p.url},     {"title", p.title},
          {"index", p.index},   {"count", p.count}, {"offset", p.char_offset},
          {"text", p.text}};
}

Window window_from_json(const nlohmann::json& j) {
  if (j.at("mode") == "search") {
    SearchView s;
    s.query = j.at("query").get<std::string>();
    s.offset = j.at("offset").get<std::size_t>();
    s.results = j.at("results").get<std::vector<SearchResult>>();
    s.has_more = j.at("has_more").get<bool>();
    return s;
  }
  PageView p;
  p.url = j.at("url").get<std::string>();
  p.title = j.at("title").get<std::string>();
  p.index = j.at("index").get<std::size_t>();
  p.count = j.at("count").get<std::size_t>();
  p.char_offset = j.at("offset").get<std::size_t>();
  p.text = j.at("text").get<std::string>();
  return p;
}

std::vector<std::string> paginate_text(std::string_view body,
                                       std::size_t window_size) {
  if (window_size == 0) {
    throw Error(ErrorCode::InvalidInput, "window size must be at least 1");
  }
  const std::u32string chars = utf8::decode(body);
  std::vector<std::string> out;
  for (std::size_t pos = 0; pos < chars.size(); pos += window_size) {
    out.push_back(
        utf8::encode(std::u32string_view(chars).substr(pos, window_size)));
  }
  if (out.empty()) out.emplace_back();
  return out;
}

PageDocument make_page_document(std::string url, std::string title,
                                std::string body, std::size_t window_size) {
  PageDocument doc;
  doc.url = std::move(url);
  doc.title = std::move(title);
  doc.windows = paginate_text(body, window_size);
  doc.body = std::move(body);
  return doc;
}

PageView page_view(const PageDocument& doc, std::size_t index) {
  PageView v;
  v.url = doc.url;
  v.title = doc.title;
  v.index = index;
  v.count = doc.windows.size();
  for (std::size_t i = 0; i < index && i < doc.windows.size(); ++i) {
    v.char_offset += utf8::length(doc.windows[i]);
  }
  v.text = index < doc.windows.size() ? doc.windows[index] : std::string{};
  return v;
}

}  // namespace searchenv
