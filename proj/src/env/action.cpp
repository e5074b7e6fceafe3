#include "searchenv/env/action.hpp"

#include "searchenv/error.hpp"

namespace searchenv {

std::string_view action_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Search: return "Search";
    case ActionKind::LoadPage1: return "Load Page <1>";
    case ActionKind::LoadPage2: return "Load Page <2>";
    case ActionKind::LoadPage3: return "Load Page <3>";
    case ActionKind::ScrollDown: return "Scroll Down";
    case ActionKind::ScrollUp: return "Scroll Up";
    case ActionKind::Quote: return "Quote";
    case ActionKind::GoBack: return "Go Back";
    case ActionKind::Merge: return "Merge";
    case ActionKind::Finish: return "Finish";
  }
  return "";
}

std::optional<ActionKind> action_from_name(std::string_view name) {
  for (auto k : kAllActionKinds) {
    if (action_name(k) == name) return k;
  }
  return std::nullopt;
}

int load_page_index(ActionKind kind) {
  switch (kind) {
    case ActionKind::LoadPage1: return 1;
    case ActionKind::LoadPage2: return 2;
    case ActionKind::LoadPage3: return 3;
    default: return 0;
  }
}

ActionKind load_page_kind(int index) {
  switch (index) {
    case 1: return ActionKind::LoadPage1;
    case 2: return ActionKind::LoadPage2;
    case 3: return ActionKind::LoadPage3;
    default:
      throw Error(ErrorCode::InvalidInput,
                  "page index must be 1, 2 or 3, got " + std::to_string(index));
  }
}

Action Action::search(std::string query) {
  Action a;
  a.kind = ActionKind::Search;
  a.query = std::move(query);
  return a;
}

Action Action::quote(std::size_t begin, std::size_t end) {
  Action a;
  a.kind = ActionKind::Quote;
  a.range = {begin, end};
  return a;
}

Action Action::of(ActionKind kind) {
  Action a;
  a.kind = kind;
  return a;
}

std::vector<ActionKind> ActionSet::kinds() const {
  std::vector<ActionKind> out;
  for (auto k : kAllActionKinds) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

void to_json(nlohmann::json& j, const Action& a) {
  j = nlohmann::json{{"kind", action_name(a.kind)}};
  if (a.kind == ActionKind::Search) j["query"] = a.query;
  if (a.kind == ActionKind::Quote) {
    j["start"] = a.range.begin;
    j["end"] = a.range.end;
  }
}

void from_json(const nlohmann::json& j, Action& a) {
  const auto name = j.at("kind").get<std::string>();
  const auto kind = action_from_name(name);
  if (!kind) throw Error(ErrorCode::UnparseableAction, "unknown action '" + name + "'");
  a = Action::of(*kind);
  if (a.kind == ActionKind::Search) a.query = j.value("query", std::string{});
  if (a.kind == ActionKind::Quote) {
    a.range.begin = j.at("start").get<std::size_t>();
    a.range.end = j.at("end").get<std::size_t>();
  }
}

}  // namespace searchenv
