#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace searchenv {

/// The ten interface actions. The enumerator order is the canonical order
/// used everywhere a set of actions is listed.
enum class ActionKind : std::uint8_t {
  Search,
  LoadPage1,
  LoadPage2,
  LoadPage3,
  ScrollDown,
  ScrollUp,
  Quote,
  GoBack,
  Merge,
  Finish,
};

inline constexpr std::size_t kActionKindCount = 10;

inline constexpr std::array<ActionKind, kActionKindCount> kAllActionKinds = {
    ActionKind::Search,     ActionKind::LoadPage1, ActionKind::LoadPage2,
    ActionKind::LoadPage3,  ActionKind::ScrollDown, ActionKind::ScrollUp,
    ActionKind::Quote,      ActionKind::GoBack,    ActionKind::Merge,
    ActionKind::Finish,
};

/// Canonical display name: "Search", "Load Page <1>", "Scroll Down", ...
std::string_view action_name(ActionKind kind);

/// Exact lookup of a canonical name (no trimming).
std::optional<ActionKind> action_from_name(std::string_view name);

/// 1..3 for the LoadPage kinds, 0 otherwise.
int load_page_index(ActionKind kind);
ActionKind load_page_kind(int index);

/// Half-open range of scalar-value offsets [begin, end).
struct CharRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end > begin ? end - begin : 0; }
  friend bool operator==(const CharRange&, const CharRange&) = default;
};

struct Action {
  ActionKind kind = ActionKind::Finish;
  std::string query;  // Search only
  CharRange range;    // Quote only, relative to the current window text

  static Action search(std::string query);
  static Action quote(std::size_t begin, std::size_t end);
  static Action of(ActionKind kind);

  friend bool operator==(const Action&, const Action&) = default;
};

class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(std::initializer_list<ActionKind> kinds) {
    for (auto k : kinds) insert(k);
  }

  void insert(ActionKind k) { bits_.set(static_cast<std::size_t>(k)); }
  bool contains(ActionKind k) const {
    return bits_.test(static_cast<std::size_t>(k));
  }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<ActionKind> kinds() const;

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::bitset<kActionKindCount> bits_;
};

void to_json(nlohmann::json& j, const Action& a);
void from_json(const nlohmann::json& j, Action& a);

}  // namespace searchenv
