#pragma once

#include <string>
#include <string_view>

namespace searchenv {

/// Lowercase hex SHA-256 of the bytes of `data`.
std::string sha256_hex(std::string_view data);

/// Short (16 hex chars) digest used for file names and observation summaries.
std::string short_digest(std::string_view data);

/// Current UTC time as ISO-8601 ("2024-01-02T03:04:05Z").
std::string utc_timestamp();

}  // namespace searchenv
