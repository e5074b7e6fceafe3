#include "doctest.h"

#include <sstream>

#include "oracles.hpp"
#include "searchenv/error.hpp"
#include "searchenv/eval/metrics.hpp"
#include "searchenv/rng.hpp"
#include "searchenv/utf8.hpp"

using namespace searchenv;

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

std::u32string random_text(Rng& rng, const std::u32string& alphabet, std::size_t max_len) {
  std::u32string s;
  const auto n = rng.uniform_below(max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.uniform_below(alphabet.size())];
  return s;
}

}  // namespace

TEST_CASE("micro/macro F1") {
  const std::vector<int> same{0, 3, 3, 9};
  const auto perfect = micro_macro_f1(same, same);
  CHECK(perfect.micro == 1.0);
  CHECK(perfect.macro == 1.0);

  // A=0, B=1, C=2. Per class: A tp1 fn1 -> 2/3, B tp1 fp2 -> 1/2, C fn1 -> 0.
  const auto f = micro_macro_f1(std::vector<int>{0, 0, 1, 2}, std::vector<int>{0, 1, 1, 1});
  CHECK(f.micro == 0.5);
  CHECK(f.macro == doctest::Approx(7.0 / 18.0).epsilon(1e-12));
  CHECK(f.classes == 3);

  const auto one = micro_macro_f1(std::vector<int>{4, 4, 4}, std::vector<int>{4, 4, 4});
  CHECK(one.micro == 1.0);
  CHECK(one.macro == 1.0);
  CHECK(one.classes == 1);

  // An unparseable prediction is simply wrong.
  const auto bad = micro_macro_f1(std::vector<int>{0, 0}, std::vector<int>{0, kInvalidLabel});
  CHECK(bad.micro == 0.5);
  CHECK(bad.macro == doctest::Approx(2.0 / 3.0));

  CHECK(code_of([] { micro_macro_f1(std::vector<int>{0}, std::vector<int>{0, 1}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { micro_macro_f1(std::vector<int>{}, std::vector<int>{}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { micro_macro_f1(std::vector<int>{10}, std::vector<int>{0}); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("micro F1 equals accuracy") {
  Rng rng(21);
  for (int n = 0; n < 300; ++n) {
    const auto len = 1 + rng.uniform_below(50);
    std::vector<int> g, p;
    for (std::size_t i = 0; i < len; ++i) {
      g.push_back(static_cast<int>(rng.uniform_below(10)));
      p.push_back(static_cast<int>(rng.uniform_below(11)) - 1);
    }
    const auto f = micro_macro_f1(g, p);
    CHECK(f.micro == searchenv::testing::accuracy_oracle(g, p));
    CHECK(f.macro >= 0.0);
    CHECK(f.macro <= 1.0);
  }
}

TEST_CASE("rouge_l") {
  CHECK(rouge_l("麦田怪圈", "麦田怪圈") == 1.0);
  CHECK(rouge_l("abc", "xyz") == 0.0);
  CHECK(rouge_l("", "abc") == 0.0);
  CHECK(rouge_l("abc", "") == 0.0);
  CHECK(rouge_l("ABCD", "ACBD") == 0.75);
  // LCS 2 of |3| and |4|: P = 2/3, R = 1/2.
  CHECK(rouge_l("abc", "axbz") == doctest::Approx(4.0 / 7.0).epsilon(1e-12));

  Rng rng(4);
  const std::u32string alphabet = U"ab麦田怪圈😀";
  for (int n = 0; n < 300; ++n) {
    const auto a = random_text(rng, alphabet, 25);
    const auto b = random_text(rng, alphabet, 25);
    const auto as = utf8::encode(a);
    const auto bs = utf8::encode(b);
    CHECK(rouge_l(as, bs) == searchenv::testing::rouge_l_oracle(a, b));
    CHECK(rouge_l(as, bs) == rouge_l(bs, as));
    if (!a.empty()) CHECK(rouge_l(as, as) == 1.0);
  }
}

TEST_CASE("novelty") {
  const std::vector<std::string> abc{"ABC"};
  CHECK(novelty("ABCDE", abc) == doctest::Approx((0.5 + 2.0 / 3.0 + 1.0) / 3.0).epsilon(1e-12));
  CHECK(novelty("ABCDE", abc) ==
        searchenv::testing::novelty_oracle(U"ABCDE", {U"ABC"}));

  const std::vector<std::string> split{"麦田", "怪圈是什么"};
  CHECK(novelty("麦田怪圈是什么", split) == 0.0);
  CHECK(novelty("wxyz", split) == 1.0);
  CHECK(code_of([&] { novelty("abc", split); }) == ErrorCode::Undefined);

  // Growing the facts never raises novelty.
  Rng rng(6);
  const std::u32string alphabet = U"abcd麦田";
  for (int n = 0; n < 200; ++n) {
    auto cand = random_text(rng, alphabet, 12);
    while (cand.size() < 4) cand += U'a';
    std::vector<std::string> facts{utf8::encode(random_text(rng, alphabet, 10))};
    const double before = novelty(utf8::encode(cand), facts);
    facts.push_back(utf8::encode(random_text(rng, alphabet, 10)));
    CHECK(novelty(utf8::encode(cand), facts) <= before);
    std::vector<std::u32string> f32;
    for (const auto& f : facts) f32.push_back(utf8::decode(f));
    CHECK(novelty(utf8::encode(cand), facts) == searchenv::testing::novelty_oracle(cand, f32));
  }
}

TEST_CASE("novelty with the fact-side denominator") {
  // Fact grams: 2 {AB, BC}, 3 {ABC}, 4 {} -> undefined.
  const std::vector<std::string> abc{"ABC"};
  CHECK(code_of([&] { novelty("ABCDE", abc, NoveltyDenominator::Facts); }) == ErrorCode::Undefined);
  const std::vector<std::string> longer{"ABCDXY"};
  // Candidate ABCDE: novel 2-grams {DE} of 5 fact 2-grams, {CDE} of 4,
  // {BCDE} of 3.
  CHECK(novelty("ABCDE", longer, NoveltyDenominator::Facts) ==
        doctest::Approx((1.0 / 5 + 1.0 / 4 + 1.0 / 3) / 3.0));
}

TEST_CASE("evaluate_jsonl") {
  std::istringstream gold(
      R"({"action":"Search"}
{"action":"Search"}
{"action":"Quote"}
{"action":"Finish"}
)");
  std::istringstream pred(
      R"({"action":"Search"}
{"action":"Quote"}
{"action":"Quote"}
{"action":"Dance"}
)");
  const auto r = evaluate_jsonl(EvalTask::Action, gold, pred);
  CHECK(r["v"] == "v1");
  CHECK(r["task"] == "action");
  CHECK(r["count"] == 4);
  CHECK(r["micro_f1"].get<double>() == 0.5);
  // Search 2/3, Quote 2/3, Finish 0.
  CHECK(r["macro_f1"].get<double>() == doctest::Approx(4.0 / 9.0));

  std::istringstream g2(R"({"text":"ABCD","facts":["ABC"]})"
                        "\n"
                        R"({"text":"xyz","facts":["x"]})");
  std::istringstream p2(R"({"text":"ACBD"})"
                        "\n"
                        R"({"text":"xyz"})");
  const auto s = evaluate_jsonl(EvalTask::Synthesis, g2, p2);
  CHECK(s["rouge_l"].get<double>() == doctest::Approx((0.75 + 1.0) / 2));
  CHECK(s["novelty_count"] == 1);
  CHECK(s["novelty"].get<double>() == doctest::Approx(novelty("ACBD", std::vector<std::string>{"ABC"})));

  std::istringstream g3("{\"text\":\"a\"}\n{\"text\":\"b\"}\n");
  std::istringstream p3("{\"text\":\"a\"}\n");
  CHECK(code_of([&] { evaluate_jsonl(EvalTask::Query, g3, p3); }) == ErrorCode::InvalidInput);

  CHECK(eval_task_from_name("fact") == EvalTask::Fact);
  CHECK_FALSE(eval_task_from_name("answers"));
}
