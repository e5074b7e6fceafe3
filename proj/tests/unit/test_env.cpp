#include "doctest.h"

#include "toy_corpus.hpp"
#include "searchenv/env/session.hpp"
#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

using namespace searchenv;
using searchenv::testing::toy_provider;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Undefined;
}

}  // namespace

TEST_CASE("paginate_text cuts hard at the window size") {
  const std::string body(1200, 'x');
  const auto slices = paginate_text(body);
  REQUIRE(slices.size() == 3);
  CHECK(slices[0].size() == 500);
  CHECK(slices[1].size() == 500);
  CHECK(slices[2].size() == 200);

  CHECK(paginate_text(std::string(500, 'y')).size() == 1);
  CHECK(paginate_text("") == std::vector<std::string>{""});
}

TEST_CASE("paginate_text counts scalar values, not bytes") {
  std::string body;
  for (int i = 0; i < 501; ++i) body += "麦";
  const auto slices = paginate_text(body);
  REQUIRE(slices.size() == 2);
  CHECK(utf8::length(slices[0]) == 500);
  CHECK(slices[1] == "麦");
  CHECK(slices[0] + slices[1] == body);
}

TEST_CASE("new session") {
  const auto s = initial_state("麦田怪圈是什么？它们是如何形成的？", 100);
  CHECK(s.actions_remaining == 100);
  CHECK(s.facts.empty());
  CHECK(s.mode() == Mode::Search);
  CHECK_FALSE(s.finished);

  Session one("q", 1, toy_provider());
  one.apply(Action::search("crop circles"));
  CHECK(one.state().closed());
  CHECK(one.legal_actions().empty());
  CHECK(code_of([&] { one.apply(Action::of(ActionKind::Finish)); }) ==
        ErrorCode::SessionClosed);

  CHECK(code_of([] { initial_state("", 100); }) == ErrorCode::InvalidQuestion);
  CHECK(code_of([] { initial_state("q", 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("legal actions follow mode, budget and bounds") {
  Session s("q", 100, toy_provider());
  CHECK(s.legal_actions() == ActionSet{ActionKind::Search, ActionKind::Finish});

  s.apply(Action::search("crop circles"));
  CHECK(s.legal_actions() ==
        ActionSet{ActionKind::Search, ActionKind::LoadPage1, ActionKind::LoadPage2,
                  ActionKind::LoadPage3, ActionKind::ScrollDown, ActionKind::Finish});

  // Page one has two windows; collect two facts first.
  s.apply(Action::of(ActionKind::LoadPage2));
  s.apply(Action::quote(0, 5));
  s.apply(Action::quote(5, 9));
  CHECK(s.legal_actions() ==
        ActionSet{ActionKind::Search, ActionKind::Quote, ActionKind::ScrollDown,
                  ActionKind::GoBack, ActionKind::Merge, ActionKind::Finish});

  SessionState exhausted = s.state();
  exhausted.actions_remaining = 0;
  CHECK(legal_actions(exhausted).empty());
}

TEST_CASE("search window scrolls in steps of three and stops at the ends") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::ScrollDown));
  auto sv = std::get<SearchView>(s.state().window);
  CHECK(sv.offset == 3);
  CHECK(sv.results.size() == 3);
  s.apply(Action::of(ActionKind::ScrollDown));
  sv = std::get<SearchView>(s.state().window);
  CHECK(sv.offset == 6);
  CHECK(sv.results.size() == 1);
  CHECK_FALSE(s.legal_actions().contains(ActionKind::ScrollDown));
  CHECK_FALSE(s.legal_actions().contains(ActionKind::LoadPage2));
  CHECK(code_of([&] { s.apply(Action::of(ActionKind::ScrollDown)); }) ==
        ErrorCode::IllegalAction);
  CHECK(code_of([&] { s.apply(Action::of(ActionKind::LoadPage2)); }) ==
        ErrorCode::IllegalAction);
  s.apply(Action::of(ActionKind::ScrollUp));
  CHECK(std::get<SearchView>(s.state().window).offset == 3);
}

TEST_CASE("browsing scrolls window by window and GoBack restores the search view") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::ScrollDown));
  const auto at_load = std::get<SearchView>(s.state().window);
  s.apply(Action::of(ActionKind::ScrollUp));
  s.apply(Action::of(ActionKind::ScrollDown));
  s.apply(Action::of(ActionKind::LoadPage1));  // toy page 3

  s.apply(Action::search("wheat"));
  s.apply(Action::of(ActionKind::LoadPage2));  // toy page 0
  auto pv = std::get<PageView>(s.state().window);
  CHECK(pv.count == 3);
  CHECK(utf8::length(pv.text) == 500);
  CHECK(code_of([&] { s.apply(Action::of(ActionKind::ScrollUp)); }) ==
        ErrorCode::IllegalAction);
  s.apply(Action::of(ActionKind::ScrollDown));
  s.apply(Action::of(ActionKind::ScrollDown));
  pv = std::get<PageView>(s.state().window);
  CHECK(pv.index == 2);
  CHECK(pv.char_offset == 1000);
  CHECK(utf8::length(pv.text) == 200);
  CHECK_FALSE(s.legal_actions().contains(ActionKind::ScrollDown));

  s.apply(Action::of(ActionKind::GoBack));
  const auto back = std::get<SearchView>(s.state().window);
  CHECK(back.query == "wheat");
  CHECK(back.offset == 0);
  CHECK_FALSE(s.legal_actions().contains(ActionKind::GoBack));
  (void)at_load;
}

TEST_CASE("GoBack returns to the exact result offset active at load time") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::ScrollDown));
  const auto at_load = std::get<SearchView>(s.state().window);
  s.apply(Action::of(ActionKind::LoadPage3));
  s.apply(Action::of(ActionKind::GoBack));
  CHECK(std::get<SearchView>(s.state().window) == at_load);
  CHECK(s.state().previous_window.has_value());
  CHECK(window_mode(*s.state().previous_window) == Mode::Browsing);
}

TEST_CASE("Quote derives the fact from the window and checks its range") {
  Session s("q", 100, toy_provider());
  CHECK(code_of([&] { s.apply(Action::quote(0, 1)); }) == ErrorCode::IllegalAction);
  s.apply(Action::search("crop circles"));
  CHECK(code_of([&] { s.apply(Action::quote(0, 1)); }) == ErrorCode::IllegalAction);
  s.apply(Action::of(ActionKind::LoadPage1));
  const auto text = std::get<PageView>(s.state().window).text;
  CHECK(code_of([&] { s.apply(Action::quote(3, 3)); }) == ErrorCode::IllegalAction);
  CHECK(code_of([&] { s.apply(Action::quote(490, 501)); }) == ErrorCode::IllegalAction);
  const auto before = canonical_state(s.state());
  CHECK(code_of([&] { s.apply(Action::quote(5, 2)); }) == ErrorCode::IllegalAction);
  CHECK(canonical_state(s.state()) == before);

  s.apply(Action::quote(10, 20));
  REQUIRE(s.state().facts.size() == 1);
  const auto& f = s.state().facts[0];
  CHECK(f.text == text.substr(10, 10));
  CHECK(f.url() == searchenv::testing::toy_url(0));
  CHECK(f.step == 2);
}

TEST_CASE("Merge concatenates the last two facts in order") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::LoadPage1));
  const auto text = std::get<PageView>(s.state().window).text;
  s.apply(Action::quote(0, 2));
  s.apply(Action::quote(2, 4));
  s.apply(Action::of(ActionKind::Merge));
  REQUIRE(s.state().facts.size() == 1);
  CHECK(s.state().facts[0].text == text.substr(0, 4));
  CHECK(s.state().facts[0].segments.size() == 2);

  SUBCASE("concatenation definition on literal facts") {
    SessionState st = s.state();
    st.facts = {SupportingFact{"AB", {}, 0}, SupportingFact{"CD", {}, 1}};
    SnapshotCache cache(toy_provider());
    const auto out = apply_action(st, Action::of(ActionKind::Merge), cache);
    REQUIRE(out.state.facts.size() == 1);
    CHECK(out.state.facts[0].text == "ABCD");
  }
}

TEST_CASE("Merge stitches a fact across a window boundary") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::LoadPage1));
  const auto body = std::get<PageView>(s.state().window).text;
  s.apply(Action::quote(480, 500));
  s.apply(Action::of(ActionKind::ScrollDown));
  const auto next = std::get<PageView>(s.state().window).text;
  s.apply(Action::quote(0, 30));
  s.apply(Action::of(ActionKind::Merge));
  REQUIRE(s.state().facts.size() == 1);
  CHECK(s.state().facts[0].text == body.substr(480) + next.substr(0, 30));
}

TEST_CASE("budget, history and the two retained windows") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::LoadPage1));
  s.apply(Action::of(ActionKind::ScrollDown));
  const auto& st = s.state();
  CHECK(st.actions_remaining == 97);
  CHECK(st.history.size() == 3);
  CHECK(st.history[0].detail == "crop circles");
  CHECK(st.history[1].detail == "Page zero");
  CHECK(std::get<PageView>(*st.previous_window).index == 0);
  CHECK(std::get<PageView>(st.window).index == 1);
  CHECK(st.query == "crop circles");
}

TEST_CASE("Finish closes the session") {
  Session s("q", 100, toy_provider());
  s.apply(Action::of(ActionKind::Finish));
  CHECK(s.state().finished);
  CHECK(s.legal_actions().empty());
  CHECK(code_of([&] { s.apply(Action::search("x")); }) == ErrorCode::SessionClosed);
}

TEST_CASE("repeated searches are served from the session snapshot cache") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  const auto first = s.state().window;
  s.apply(Action::search("crop circles"));
  CHECK(s.state().window == first);
  CHECK(code_of([&] { s.apply(Action::search("   ")); }) == ErrorCode::IllegalAction);
}

TEST_CASE("undo and reset") {
  Session s("q", 100, toy_provider());
  const auto fresh = canonical_state(s.state());
  CHECK(code_of([&] { s.undo(); }) == ErrorCode::NothingToUndo);

  s.apply(Action::search("crop circles"));
  s.undo();
  CHECK(canonical_state(s.state()) == fresh);
  CHECK(s.steps().empty());

  s.apply(Action::search("crop circles"));
  CHECK(code_of([&] { s.apply(Action::quote(0, 1)); }) == ErrorCode::IllegalAction);
  CHECK(s.steps().size() == 1);
  s.undo();
  CHECK(canonical_state(s.state()) == fresh);

  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::LoadPage1));
  s.apply(Action::of(ActionKind::Finish));
  s.undo();
  CHECK_FALSE(s.state().finished);
  CHECK(s.state().actions_remaining == 98);
  s.reset();
  CHECK(canonical_state(s.state()) == fresh);
  CHECK(s.steps().empty());
}

TEST_CASE("state JSON round-trips") {
  Session s("q", 100, toy_provider());
  s.apply(Action::search("crop circles"));
  s.apply(Action::of(ActionKind::LoadPage1));
  s.apply(Action::quote(1, 7));
  const nlohmann::json j = s.state();
  CHECK(j.get<SessionState>() == s.state());
}

TEST_CASE("action names") {
  CHECK(action_name(ActionKind::LoadPage2) == "Load Page <2>");
  CHECK(action_from_name("Go Back") == ActionKind::GoBack);
  CHECK_FALSE(action_from_name("Browse").has_value());
  for (auto k : kAllActionKinds) CHECK(action_from_name(action_name(k)) == k);
}
