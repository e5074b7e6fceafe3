#include "searchenv/agent/span_codec.hpp"

#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

std::string encode_fact_span(std::string_view window, CharRange span, std::size_t n_f) {
  if (n_f == 0) throw Error(ErrorCode::InvalidSpan, "N_f must be positive");
  const auto w = utf8::decode(window);
  if (span.begin >= span.end || span.end > w.size()) {
    throw Error(ErrorCode::InvalidSpan, "span [" + std::to_string(span.begin) + ", " +
                                            std::to_string(span.end) + ") outside a window of " +
                                            std::to_string(w.size()) + " characters");
  }
  const std::u32string_view s(w.data() + span.begin, span.size());
  std::string out(kSpanStart);
  if (s.size() < 2 * n_f) {
    out += utf8::encode(s);
    out += kSpanEnd;
    return out;
  }
  out += utf8::encode(s.substr(0, n_f));
  out += kSpanEnd;
  out += utf8::encode(s.substr(s.size() - n_f));
  return out;
}

CharRange decode_fact_span(std::string_view window, std::string_view enc) {
  if (!enc.starts_with(kSpanStart)) {
    throw Error(ErrorCode::InvalidSpan, "encoding does not start with [s]");
  }
  enc.remove_prefix(kSpanStart.size());
  const auto mark = enc.find(kSpanEnd);
  if (mark == std::string_view::npos) throw Error(ErrorCode::InvalidSpan, "encoding lacks [e]");
  const auto head = utf8::decode(enc.substr(0, mark));
  const auto tail = utf8::decode(enc.substr(mark + kSpanEnd.size()));
  if (head.empty()) throw Error(ErrorCode::InvalidSpan, "empty start segment");

  const auto w = utf8::decode(window);
  const auto first = w.find(head);
  if (first == std::u32string::npos) {
    throw Error(ErrorCode::SpanNotFound, "start segment not in window");
  }
  if (tail.empty()) return {first, first + head.size()};

  const auto last = w.rfind(tail);
  if (last == std::u32string::npos) throw Error(ErrorCode::SpanNotFound, "end segment not in window");
  if (last < first + head.size()) {
    throw Error(ErrorCode::SpanNotFound, "end segment does not follow the start segment");
  }
  return {first, last + tail.size()};
}

}  // namespace searchenv
