#include "searchenv/retrieval/html_extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <string_view>
#include <vector>

#include "searchenv/digest.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

namespace {

using namespace std::string_view_literals;

template <std::size_t N>
bool one_of(std::string_view name, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

constexpr std::array kRawText = {"script"sv, "style"sv,  "noscript"sv, "template"sv,
                                 "iframe"sv, "svg"sv,    "math"sv,     "object"sv,
                                 "canvas"sv, "textarea"sv};

// Subtrees that are page chrome rather than content.
constexpr std::array kChrome = {"nav"sv,    "aside"sv,  "form"sv,  "menu"sv,
                                "button"sv, "select"sv, "dialog"sv};
// Chrome only when outside <article>/<main>.
constexpr std::array kOuterChrome = {"header"sv, "footer"sv};

constexpr std::array kMain = {"article"sv, "main"sv};

constexpr std::array kBlock = {
    "address"sv, "article"sv, "aside"sv,   "blockquote"sv, "body"sv,   "caption"sv,
    "center"sv,  "dd"sv,      "div"sv,     "dl"sv,         "dt"sv,     "fieldset"sv,
    "figcaption"sv, "figure"sv, "footer"sv, "h1"sv,        "h2"sv,     "h3"sv,
    "h4"sv,      "h5"sv,      "h6"sv,      "header"sv,     "html"sv,   "li"sv,
    "main"sv,    "nav"sv,     "ol"sv,      "p"sv,          "pre"sv,    "section"sv,
    "table"sv,   "tbody"sv,   "td"sv,      "tfoot"sv,      "th"sv,     "thead"sv,
    "tr"sv,      "ul"sv};

constexpr std::array kBreak = {"br"sv, "hr"sv};

constexpr std::array kWhitelist = {"p"sv,  "h1"sv, "h2"sv, "h3"sv,  "h4"sv,
                                   "h5"sv, "h6"sv, "li"sv, "td"sv,  "th"sv,
                                   "pre"sv, "blockquote"sv, "dd"sv, "dt"sv,
                                   "figcaption"sv};

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 32> kEntities = {{
    {"amp", U'&'},     {"lt", U'<'},       {"gt", U'>'},      {"quot", U'"'},
    {"apos", U'\''},   {"nbsp", 0xA0},     {"copy", 0xA9},    {"reg", 0xAE},
    {"trade", 0x2122}, {"mdash", 0x2014},  {"ndash", 0x2013}, {"hellip", 0x2026},
    {"middot", 0xB7},  {"bull", 0x2022},   {"ldquo", 0x201C}, {"rdquo", 0x201D},
    {"lsquo", 0x2018}, {"rsquo", 0x2019},  {"laquo", 0xAB},   {"raquo", 0xBB},
    {"times", 0xD7},   {"divide", 0xF7},   {"deg", 0xB0},     {"plusmn", 0xB1},
    {"para", 0xB6},    {"sect", 0xA7},     {"yen", 0xA5},     {"euro", 0x20AC},
    {"pound", 0xA3},   {"cent", 0xA2},     {"ensp", 0x2002},  {"emsp", 0x2003},
}};

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Decodes one entity starting at html[pos] == '&'. Returns the number of
// bytes consumed (0 if this is not a recognised entity).
std::size_t decode_entity(std::string_view html, std::size_t pos, char32_t& cp) {
  const auto semi = html.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return 0;
  const auto body = html.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return 0;
  if (body.front() == '#') {
    unsigned long value = 0;
    std::from_chars_result res{};
    if (body.size() > 1 && (body[1] == 'x' || body[1] == 'X')) {
      res = std::from_chars(body.data() + 2, body.data() + body.size(), value, 16);
    } else {
      res = std::from_chars(body.data() + 1, body.data() + body.size(), value, 10);
    }
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size()) return 0;
    cp = (value == 0 || value > 0x10FFFF) ? 0xFFFD : static_cast<char32_t>(value);
    return semi - pos + 1;
  }
  for (const auto& e : kEntities) {
    if (e.name == body) {
      cp = e.cp;
      return semi - pos + 1;
    }
  }
  return 0;
}

struct Block {
  std::string text;
  std::size_t chars = 0;
  std::size_t link_chars = 0;
  bool whitelisted = false;
  bool in_main = false;
  bool heading = false;
};

class Extractor {
 public:
  explicit Extractor(std::string_view html) : html_(html) {}

  ExtractedText run() {
    std::size_t i = 0;
    while (i < html_.size()) {
      const char c = html_[i];
      if (c == '<') {
        i = on_markup(i);
      } else if (c == '&') {
        char32_t cp = 0;
        if (const auto n = decode_entity(html_, i, cp); n > 0) {
          emit_cp(cp);
          i += n;
        } else {
          emit_byte('&');
          ++i;
        }
      } else {
        // Literal U+00A0 (C2 A0) counts as whitespace.
        if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < html_.size() &&
            static_cast<unsigned char>(html_[i + 1]) == 0xA0) {
          emit_space();
          i += 2;
          continue;
        }
        emit_byte(c);
        ++i;
      }
    }
    flush();
    return finish();
  }

 private:
  std::size_t on_markup(std::size_t i) {
    if (html_.compare(i, 4, "<!--") == 0) {
      const auto end = html_.find("-->", i + 4);
      return end == std::string_view::npos ? html_.size() : end + 3;
    }
    if (i + 1 < html_.size() && (html_[i + 1] == '!' || html_[i + 1] == '?')) {
      const auto end = html_.find('>', i);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    std::size_t j = i + 1;
    bool closing = false;
    if (j < html_.size() && html_[j] == '/') {
      closing = true;
      ++j;
    }
    const std::size_t name_start = j;
    while (j < html_.size() && std::isalnum(static_cast<unsigned char>(html_[j]))) ++j;
    if (j == name_start || !std::isalpha(static_cast<unsigned char>(html_[name_start]))) {
      emit_byte('<');
      return i + 1;
    }
    const std::string name = lower_ascii(html_.substr(name_start, j - name_start));
    // Skip attributes, honouring quotes.
    char quote = 0;
    bool self_closing = false;
    while (j < html_.size()) {
      const char c = html_[j];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        self_closing = j > 0 && html_[j - 1] == '/';
        break;
      }
      ++j;
    }
    const std::size_t after = j < html_.size() ? j + 1 : html_.size();
    if (closing) {
      on_close(name);
      return after;
    }
    if (one_of(name, kRawText) && !self_closing) return skip_raw(name, after, false);
    if (name == "title" && !self_closing) return skip_raw(name, after, true);
    on_open(name, self_closing);
    return after;
  }

  // Skips to the matching close tag of a raw-text element.
  std::size_t skip_raw(const std::string& name, std::size_t from, bool capture_title) {
    std::size_t k = from;
    while (true) {
      k = html_.find("</", k);
      if (k == std::string_view::npos) {
        k = html_.size();
        break;
      }
      if (lower_ascii(html_.substr(k + 2, name.size())) == name) break;
      k += 2;
    }
    if (capture_title && title_.empty()) {
      title_ = collapse(decode_text(html_.substr(from, k - from)));
    }
    if (k >= html_.size()) return html_.size();
    const auto end = html_.find('>', k);
    return end == std::string_view::npos ? html_.size() : end + 1;
  }

  void on_open(const std::string& name, bool self_closing) {
    if (one_of(name, kBreak)) {
      flush();
      return;
    }
    if (name == "a" && !self_closing) ++link_depth_;
    const bool chrome =
        one_of(name, kChrome) || (one_of(name, kOuterChrome) && main_depth_ == 0);
    if (chrome && !self_closing) {
      flush();
      ++skip_depth_;
      return;
    }
    if (one_of(name, kMain) && !self_closing) {
      saw_main_ = true;
      flush();
      ++main_depth_;
    }
    if (one_of(name, kBlock) && !self_closing) {
      flush();
      stack_.push_back(name);
    }
  }

  void on_close(const std::string& name) {
    if (name == "a") {
      if (link_depth_ > 0) --link_depth_;
      return;
    }
    if ((one_of(name, kChrome) || one_of(name, kOuterChrome)) && skip_depth_ > 0) {
      flush();
      --skip_depth_;
      return;
    }
    if (one_of(name, kBlock)) {
      flush();
      const auto it = std::find(stack_.rbegin(), stack_.rend(), name);
      if (it != stack_.rend()) stack_.erase(std::next(it).base(), stack_.end());
    }
    if (one_of(name, kMain) && main_depth_ > 0) --main_depth_;
  }

  bool suppressed() const { return skip_depth_ > 0; }

  void emit_space() {
    if (suppressed()) return;
    pending_space_ = true;
  }

  void emit_byte(char c) {
    if (suppressed()) return;
    if (is_ascii_space(c)) {
      pending_space_ = true;
      return;
    }
    if (pending_space_ && !current_.text.empty()) current_.text.push_back(' ');
    pending_space_ = false;
    current_.text.push_back(c);
    // Count scalar values by their lead bytes.
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++current_.chars;
      if (link_depth_ > 0) ++current_.link_chars;
    }
  }

  void emit_cp(char32_t cp) {
    if (cp == 0xA0 || (cp < 0x80 && is_ascii_space(static_cast<char>(cp)))) {
      emit_space();
      return;
    }
    std::string bytes;
    utf8::append(bytes, cp);
    for (char b : bytes) emit_byte(b);
  }

  void flush() {
    if (current_.chars > 0) {
      current_.whitelisted = std::any_of(stack_.begin(), stack_.end(), [](const std::string& n) {
        return one_of(n, kWhitelist);
      });
      current_.heading = !stack_.empty() && stack_.back().size() == 2 &&
                         stack_.back()[0] == 'h' && std::isdigit(static_cast<unsigned char>(stack_.back()[1]));
      current_.in_main = main_depth_ > 0;
      blocks_.push_back(std::move(current_));
    }
    current_ = Block{};
    pending_space_ = false;
  }

  static std::string decode_text(std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size();) {
      char32_t cp = 0;
      if (raw[i] == '&') {
        if (const auto n = decode_entity(raw, i, cp); n > 0) {
          utf8::append(out, cp == 0xA0 ? U' ' : cp);
          i += n;
          continue;
        }
      }
      out.push_back(raw[i]);
      ++i;
    }
    return out;
  }

  static std::string collapse(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
      if (is_ascii_space(c)) {
        space = true;
        continue;
      }
      if (space && !out.empty()) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
    return out;
  }

  static void neutralize_tags(std::string& body) {
    static const std::string kFullwidthLt = "\xEF\xBC\x9C";  // U+FF1C
    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '<' && i + 1 < body.size() &&
          std::isalpha(static_cast<unsigned char>(body[i + 1]))) {
        out += kFullwidthLt;
      } else {
        out.push_back(body[i]);
      }
    }
    body = std::move(out);
  }

  ExtractedText finish() {
    const bool restrict_to_main =
        saw_main_ && std::any_of(blocks_.begin(), blocks_.end(),
                                 [](const Block& b) { return b.in_main; });
    ExtractedText out;
    std::string first_heading;
    for (const auto& b : blocks_) {
      if (b.heading && first_heading.empty()) first_heading = b.text;
      if (restrict_to_main && !b.in_main) continue;
      if (b.link_chars * 2 > b.chars) continue;
      if (!b.whitelisted && b.chars < kMinLooseBlockChars) continue;
      if (!out.body.empty()) out.body.push_back('\n');
      out.body += b.text;
    }
    neutralize_tags(out.body);
    out.title = title_.empty() ? first_heading : title_;
    neutralize_tags(out.title);
    return out;
  }

  std::string_view html_;
  std::vector<std::string> stack_;
  std::vector<Block> blocks_;
  Block current_;
  bool pending_space_ = false;
  int link_depth_ = 0;
  int skip_depth_ = 0;
  int main_depth_ = 0;
  bool saw_main_ = false;
  std::string title_;
};

}  // namespace

ExtractedText extract_html(std::string_view html) { return Extractor(html).run(); }

PageSnapshot snapshot_from_html(const std::string& url, std::string html,
                                std::string fetched_at) {
  auto text = extract_html(html);
  PageSnapshot snap;
  snap.url = url;
  snap.fetched_at = std::move(fetched_at);
  snap.html_digest = sha256_hex(html);
  snap.raw_html = std::move(html);
  snap.document = make_page_document(url, text.title.empty() ? url : text.title,
                                     std::move(text.body));
  return snap;
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace searchenv
