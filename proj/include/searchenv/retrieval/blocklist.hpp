#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace searchenv {

/// Lowercased host of an absolute http(s) URL, or nullopt if `url` is not
/// absolute.
std::optional<std::string> url_host(std::string_view url);

/// Domain-suffix blocklist. "reddit.com" blocks reddit.com and any
/// subdomain of it, but not notreddit.com. Case-insensitive.
class Blocklist {
 public:
  Blocklist() = default;
  explicit Blocklist(std::vector<std::string> suffixes);

  /// One suffix per line; blank lines and '#' comments are skipped.
  static Blocklist load(const std::filesystem::path& file);

  bool blocks(std::string_view url) const;
  const std::vector<std::string>& suffixes() const { return suffixes_; }

 private:
  std::vector<std::string> suffixes_;
};

}  // namespace searchenv
