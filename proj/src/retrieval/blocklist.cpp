#include "searchenv/retrieval/blocklist.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "searchenv/error.hpp"

namespace searchenv {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::optional<std::string> url_host(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;
  for (char c : url.substr(0, scheme_end)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return std::nullopt;
    }
  }
  auto rest = url.substr(scheme_end + 3);
  rest = rest.substr(0, rest.find_first_of("/?#"));
  if (const auto at = rest.rfind('@'); at != std::string_view::npos) {
    rest = rest.substr(at + 1);
  }
  if (!rest.empty() && rest.front() == '[') {
    const auto close = rest.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    rest = rest.substr(0, close + 1);
  } else {
    rest = rest.substr(0, rest.find(':'));
  }
  if (rest.empty()) return std::nullopt;
  return lower(rest);
}

Blocklist::Blocklist(std::vector<std::string> suffixes) {
  for (auto& s : suffixes) {
    auto t = lower(trim(s));
    while (!t.empty() && t.front() == '.') t.erase(t.begin());
    if (!t.empty()) suffixes_.push_back(std::move(t));
  }
}

Blocklist Blocklist::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorCode::InvalidInput, "cannot read blocklist " + file.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back(t);
  }
  return Blocklist(std::move(lines));
}

bool Blocklist::blocks(std::string_view url) const {
  if (suffixes_.empty()) return false;
  const auto host = url_host(url);
  if (!host) return false;
  for (const auto& suffix : suffixes_) {
    if (*host == suffix) return true;
    if (host->size() > suffix.size() &&
        host->compare(host->size() - suffix.size(), suffix.size(), suffix) == 0 &&
        (*host)[host->size() - suffix.size() - 1] == '.') {
      return true;
    }
  }
  return false;
}

}  // namespace searchenv
