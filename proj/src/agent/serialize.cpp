#include "searchenv/agent/serialize.hpp"

#include <string_view>
#include <vector>

#include "searchenv/utf8.hpp"

namespace searchenv {

namespace {

constexpr std::string_view kSentinelPrefix = "⟦";

std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  if (s.starts_with(kSentinelPrefix)) out += '\\';
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::string escape_block(std::string_view text) {
  std::string out;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    const auto line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    if (line.starts_with(kSentinelPrefix) || line.starts_with("\\")) out += '\\';
    out += line;
    if (nl == std::string_view::npos) break;
    out += '\n';
    start = nl + 1;
  }
  return out;
}

std::string render_window(const Window& w) {
  if (const auto* sv = std::get_if<SearchView>(&w)) {
    if (sv->query.empty() && sv->results.empty()) return "(empty)";
    std::string out = "search: " + escape_field(sv->query) + "\noffset: " + std::to_string(sv->offset);
    for (std::size_t i = 0; i < sv->results.size(); ++i) {
      const auto& r = sv->results[i];
      out += "\n<" + std::to_string(i + 1) + "> " + escape_field(r.title) + "\n" +
             escape_field(r.url) + "\n" + escape_field(r.snippet);
    }
    if (sv->results.empty()) out += "\n(no results)";
    return out;
  }
  const auto& pv = std::get<PageView>(w);
  return "page: " + escape_field(pv.title) + "\n" + escape_field(pv.url) + "\nwindow " +
         std::to_string(pv.index + 1) + "/" + std::to_string(pv.count) + "\n" +
         escape_block(pv.text);
}

std::string history_line(const HistoryEntry& h) {
  std::string line(action_name(h.kind));
  if (!h.detail.empty()) line += ": " + escape_field(h.detail);
  return line;
}

}  // namespace

std::string serialize_state(const SessionState& state, const SerializeOptions& options) {
  const std::string head = "⟦question⟧\n" + escape_field(state.question) + "\n⟦query⟧\n" +
                           escape_field(state.query) + "\n⟦history⟧\n";

  std::string tail = "⟦previous window⟧\n";
  tail += state.previous_window ? render_window(*state.previous_window) : "(none)";
  tail += "\n⟦current window⟧\n" + render_window(state.window) + "\n⟦facts⟧\n";
  for (std::size_t i = 0; i < state.facts.size(); ++i) {
    tail += "[" + std::to_string(i + 1) + "] " + escape_field(state.facts[i].text) + "\n";
  }
  tail += "⟦actions remaining⟧\n" + std::to_string(state.actions_remaining) + "\n";

  std::vector<std::string> lines;
  lines.reserve(state.history.size());
  std::size_t history_chars = 0;
  for (const auto& h : state.history) {
    lines.push_back(history_line(h) + "\n");
    history_chars += utf8::length(lines.back());
  }

  const std::size_t fixed = utf8::length(head) + utf8::length(tail);
  std::size_t dropped = 0;
  std::string marker;
  while (dropped < lines.size() && fixed + history_chars + utf8::length(marker) > options.max_chars) {
    history_chars -= utf8::length(lines[dropped]);
    ++dropped;
    marker = "(" + std::to_string(dropped) + " earlier actions omitted)\n";
  }

  std::string out = head + marker;
  for (std::size_t i = dropped; i < lines.size(); ++i) out += lines[i];
  out += tail;
  return out;
}

}  // namespace searchenv
