#include "doctest.h"

#include <algorithm>
#include <random>

#include "searchenv/error.hpp"
#include "searchenv/rng.hpp"
#include "searchenv/synthesis/synthesis.hpp"
#include "searchenv/utf8.hpp"

using namespace searchenv;

namespace {

std::vector<SynthesisInstance> make_pool(std::size_t n) {
  std::vector<SynthesisInstance> pool;
  for (std::size_t i = 0; i < n; ++i) {
    pool.push_back({"q" + std::to_string(i),
                    {"p" + std::to_string(i) + "a", "p" + std::to_string(i) + "b"},
                    "ans"});
  }
  return pool;
}

bool is_subsequence(const std::vector<std::string>& sub, const std::vector<std::string>& seq) {
  std::size_t k = 0;
  for (const auto& s : seq) {
    if (k < sub.size() && sub[k] == s) ++k;
  }
  return k == sub.size();
}

}  // namespace

TEST_CASE("split_subsentences") {
  CHECK(split_subsentences("A，B。C") == std::vector<std::string>{"A，", "B。", "C"});
  CHECK(split_subsentences("ABC") == std::vector<std::string>{"ABC"});
  CHECK(split_subsentences("").empty());
  CHECK(split_subsentences("a,b.c;d!e?f、g；h！i？") ==
        std::vector<std::string>{"a,", "b.", "c;", "d!", "e?", "f、", "g；", "h！", "i？"});
  CHECK(split_subsentences("。。") == std::vector<std::string>{"。", "。"});
  CHECK(split_subsentences("x|y", "|") == std::vector<std::string>{"x|", "y"});
}

TEST_CASE("split_subsentences concatenates back to its input") {
  Rng rng(3);
  const std::u32string alphabet = U"ab麦田，。,.!? ";
  for (int n = 0; n < 500; ++n) {
    std::u32string chars;
    const auto len = rng.uniform_below(30);
    for (std::size_t i = 0; i < len; ++i) chars += alphabet[rng.uniform_below(alphabet.size())];
    const auto text = utf8::encode(chars);
    std::string joined;
    for (const auto& p : split_subsentences(text)) {
      CHECK_FALSE(p.empty());
      joined += p;
    }
    CHECK(joined == text);
  }
}

TEST_CASE("erase_subsentences") {
  const std::vector<std::string> facts{"A，B。C", "甲，乙", "", "no punctuation"};
  CHECK(erase_subsentences(facts, 0.0, 1) == facts);
  CHECK(erase_subsentences(facts, 1.0, 1) == std::vector<std::string>(4, ""));
  CHECK_THROWS_AS(erase_subsentences(facts, 1.5, 1), Error);
  CHECK_THROWS_AS(erase_subsentences(facts, -0.1, 1), Error);

  // The first three outputs of mt19937_64 seeded with 7, mapped to [0, 1)
  // with 53 bits, are 0.754..., 0.949..., 0.117...: only "C" falls below 0.5.
  std::mt19937_64 engine(7);
  std::vector<double> draws;
  for (int i = 0; i < 3; ++i) draws.push_back(static_cast<double>(engine() >> 11) * 0x1.0p-53);
  CHECK(draws[0] >= 0.5);
  CHECK(draws[1] >= 0.5);
  CHECK(draws[2] < 0.5);
  const std::vector<std::string> one{"A，B。C"};
  CHECK(erase_subsentences(one, 0.5, 7) == std::vector<std::string>{"A，B。"});
}

TEST_CASE("erase_subsentences keeps an in-order subsequence, deterministically") {
  Rng rng(8);
  for (int n = 0; n < 200; ++n) {
    const std::vector<std::string> facts{"一，二，三。四！五", "a,b,c", "x"};
    const double p = rng.uniform01();
    const auto seed = rng.next();
    const auto out = erase_subsentences(facts, p, seed);
    CHECK(out == erase_subsentences(facts, p, seed));
    for (std::size_t i = 0; i < facts.size(); ++i) {
      CHECK(is_subsequence(split_subsentences(out[i]), split_subsentences(facts[i])));
    }
  }
}

TEST_CASE("corrupt_with_noise") {
  const SynthesisInstance inst{"Q", {"f1", "f2"}, "answer"};
  const auto pool = make_pool(5);

  const auto none = corrupt_with_noise(inst, pool, 0, 1);
  CHECK(none.facts.size() == 2);
  CHECK(std::is_permutation(none.facts.begin(), none.facts.end(), inst.facts.begin()));
  CHECK(std::none_of(none.noise.begin(), none.noise.end(), [](bool b) { return b; }));

  const auto two = corrupt_with_noise(inst, pool, 2, 1);
  REQUIRE(two.facts.size() == 4);
  CHECK(std::count(two.noise.begin(), two.noise.end(), true) == 2);
  CHECK(two.answer == "answer");
  CHECK(two.question == "Q");
  std::vector<std::string> originals;
  std::vector<std::string> donors;
  for (std::size_t i = 0; i < 4; ++i) {
    (two.noise[i] ? donors : originals).push_back(two.facts[i]);
  }
  std::sort(originals.begin(), originals.end());
  CHECK(originals == inst.facts);
  // Distinct donors: pool facts are named p<instance><letter>.
  CHECK(donors[0].substr(0, 2) != donors[1].substr(0, 2));

  CHECK(corrupt_with_noise(inst, pool, 2, 1) == two);

  CHECK_THROWS_AS(corrupt_with_noise(inst, {}, 1, 1), Error);
  std::vector<SynthesisInstance> sparse{{"a", {}, ""}, {"b", {"x"}, ""}};
  try {
    corrupt_with_noise(inst, sparse, 2, 1);
    FAIL("expected InsufficientPool");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientPool);
  }
  CHECK(corrupt_with_noise(inst, sparse, 1, 1).facts.size() == 3);
}

TEST_CASE("corrupt_dataset") {
  auto data = make_pool(6);
  data[2].facts = {"a，b，c", "d"};
  CorruptionConfig cfg;
  cfg.seed = 99;
  const auto out = corrupt_dataset(data, cfg);
  REQUIRE(out.size() == 6);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto injected = static_cast<std::size_t>(std::count(out[i].noise.begin(), out[i].noise.end(), true));
    CHECK(injected == 1);  // N = 2 facts -> N' uniform in [1, 1]
    CHECK(out[i].facts.size() == data[i].facts.size() + injected);
    CHECK(out[i].answer == data[i].answer);
    for (std::size_t k = 0; k < out[i].facts.size(); ++k) {
      if (out[i].noise[k]) {
        CHECK(out[i].facts[k].substr(0, 2) != "p" + std::to_string(i));
      }
    }
  }
  CHECK(corrupt_dataset(data, cfg) == out);

  cfg.noise_count = 3;
  cfg.erase_p = 1.0;
  for (const auto& r : corrupt_dataset(data, cfg)) {
    CHECK(r.facts.size() == 5);
    for (std::size_t k = 0; k < r.facts.size(); ++k) {
      if (!r.noise[k]) CHECK(r.facts[k].empty());
    }
  }

  const auto rec = out[0];
  CHECK(nlohmann::json(rec).get<SynthesisRecord>() == rec);
  CHECK(nlohmann::json(rec)["v"] == "v1");
}
