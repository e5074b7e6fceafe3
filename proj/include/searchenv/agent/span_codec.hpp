#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "searchenv/env/action.hpp"

namespace searchenv {

inline constexpr std::string_view kSpanStart = "[s]";
inline constexpr std::string_view kSpanEnd = "[e]";
inline constexpr std::size_t kDefaultNf = 10;

/// Encodes `span` (half-open, in characters of `window`) as
///   "[s]" + first n_f chars + "[e]" + last n_f chars
/// or, when the span is shorter than 2*n_f, "[s]" + span + "[e]".
/// Throws InvalidSpan for n_f == 0 and for empty or out-of-bounds spans.
std::string encode_fact_span(std::string_view window, CharRange span,
                             std::size_t n_f = kDefaultNf);

/// Inverse of encode_fact_span against the same window. For the long form
/// the result is the longest span that starts with the start segment and
/// ends with the end segment without the two overlapping; for the short
/// form it is the first literal occurrence. Throws InvalidSpan when `enc`
/// is malformed and SpanNotFound when nothing matches.
CharRange decode_fact_span(std::string_view window, std::string_view enc);

}  // namespace searchenv
