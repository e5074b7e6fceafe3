#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Text in the library is carried as UTF-8 std::string. Every length, offset
// and window size is measured in Unicode scalar values; these helpers convert
// at the boundaries.
namespace searchenv::utf8 {

/// Decodes UTF-8. Invalid bytes decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

/// Number of scalar values in `text`.
std::size_t length(std::string_view text);

/// Substring by scalar-value offsets, clamped to the text.
std::string substr(std::string_view text, std::size_t pos, std::size_t count);

}  // namespace searchenv::utf8
