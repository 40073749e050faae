#include <doctest.h>

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "ropelab/error.hpp"
#include "ropelab/records.hpp"
#include "ropelab/taskgen.hpp"

using namespace ropelab;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Independent re-parse: keys and values from lines that look like register
// lines, and the key named in the final question.
struct Reparsed {
  std::vector<std::pair<std::string, std::string>> lines;
  std::string queried;
};

Reparsed reparse(const std::string& prompt) {
  static const std::regex line_re("^line ([a-z]+-[a-z]+): REGISTER_CONTENT is <([0-9]+)>$");
  static const std::regex query_re("REGISTER_CONTENT in line ([a-z]+-[a-z]+)\\?");
  Reparsed r;
  for (const auto& l : split_lines(prompt)) {
    std::smatch m;
    if (std::regex_match(l, m, line_re)) r.lines.emplace_back(m[1], m[2]);
  }
  std::smatch m;
  if (std::regex_search(prompt, m, query_re)) r.queried = m[1];
  return r;
}

std::vector<QARecord> sample_corpus() {
  return read_qa_records(std::string(ROPELAB_TEST_DATA) + "/qa_sample.jsonl");
}

bool digits_only(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// First occurrence of `needle` not glued to neighbouring digits, found by a
// plain scan independent of the library matcher.
std::size_t first_standalone(const std::string& hay, const std::string& needle) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) {
    const bool left = p > 0 && digit(hay[p - 1]) && digit(needle.front());
    const bool right = p + needle.size() < hay.size() && digit(hay[p + needle.size()]) &&
                       digit(needle.back());
    if (!left && !right) return p;
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("word lists") {
  CHECK(adjective_list().size() >= 500);
  CHECK(noun_list().size() >= 500);
  for (const auto* list : {&adjective_list(), &noun_list()}) {
    std::set<std::string_view> uniq(list->begin(), list->end());
    CHECK(uniq.size() == list->size());
    for (auto w : *list) {
      CHECK(std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; }));
    }
  }
  CHECK(line_key_capacity() == adjective_list().size() * noun_list().size());
}

TEST_CASE("lines sample format") {
  const TaskSample s = gen_longchat_lines(30, std::uint64_t{7});
  const std::regex re("^line [a-z]+-[a-z]+: REGISTER_CONTENT is <[0-9]+>$");
  int matched = 0;
  for (const auto& l : split_lines(s.prompt)) {
    if (l.rfind("line ", 0) == 0) {
      CHECK(std::regex_match(l, re));
      CHECK(parse_register_line(l).has_value());
      ++matched;
    }
  }
  CHECK(matched == 30);
  CHECK(s.num_lines == 30);
  CHECK(s.task == Task::longchat_lines);
  CHECK_FALSE(parse_register_line("line Bad-key: REGISTER_CONTENT is <1>").has_value());
  CHECK_FALSE(parse_register_line("line a-b: REGISTER_CONTENT is <x>").has_value());
  CHECK(parse_register_line("line a-b: REGISTER_CONTENT is <42527>")->value == 42527);
}

TEST_CASE("single-line sample answers with its only value") {
  const TaskSample s = gen_longchat_lines(1, std::uint64_t{3});
  const Reparsed r = reparse(s.prompt);
  REQUIRE(r.lines.size() == 1);
  CHECK(r.lines[0].second == s.answer);
  CHECK(r.queried == r.lines[0].first);
}

TEST_CASE("lines samples: unique keys, re-parsed answers, value range") {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const TaskSample s = gen_longchat_lines(50, seed);
    const Reparsed r = reparse(s.prompt);
    REQUIRE(r.lines.size() == 50);
    std::set<std::string> keys;
    std::string answer;
    for (const auto& [k, v] : r.lines) {
      keys.insert(k);
      const long value = std::stol(v);
      if (value < 1000 || value > 99999) FAIL("value out of range: " << v);
      if (k == r.queried) answer = v;
    }
    if (keys.size() != 50) FAIL("duplicate key in seed " << seed);
    if (answer != s.answer) FAIL("answer mismatch in seed " << seed);
  }
}

TEST_CASE("lines generation is byte-deterministic and checks capacity") {
  CHECK(to_json_line(gen_longchat_lines(40, std::uint64_t{9})) ==
        to_json_line(gen_longchat_lines(40, std::uint64_t{9})));
  CHECK(gen_longchat_lines(40, std::uint64_t{9}).prompt !=
        gen_longchat_lines(40, std::uint64_t{10}).prompt);
  CHECK_THROWS_AS(gen_longchat_lines(static_cast<int>(line_key_capacity()) + 1, std::uint64_t{0}),
                  CapacityError);
  CHECK_THROWS_AS(gen_longchat_lines(0, std::uint64_t{0}), InvalidParameter);
}

TEST_CASE("lines budget") {
  const TokenBudgeter b;
  CHECK(lines_for_budget(0, b) == 1);
  int prev = 0;
  for (int t = 0; t <= 30000; t += 250) {
    const int n = lines_for_budget(t, b);
    CHECK(n >= prev);
    prev = n;
  }
  for (int target : {2500, 3600, 4200, 4800, 7100, 9400, 11800, 14000, 16000, 17500, 20000, 22000}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const TaskSample s = gen_longchat_lines(lines_for_budget(target, b), seed);
      const double measured = b.count(s.prompt);
      CHECK(std::fabs(measured - target) <= 0.15 * target);
    }
  }
}

TEST_CASE("token budgeter") {
  const TokenBudgeter b;
  CHECK(b.count("") == 0);
  CHECK(b.count("a") == 1);
  CHECK(b.count("abcd") == 1);
  CHECK(b.count("abcde") == 2);
  std::string acc;
  int prev = 0;
  for (int i = 0; i < 50; ++i) {
    acc += "word ";
    CHECK(b.count(acc) >= prev);
    prev = b.count(acc);
  }
  CHECK_THROWS_AS(TokenBudgeter(0.0), InvalidParameter);
  const TokenBudgeter ext = TokenBudgeter::from_external_counts({{"hello world", 2}, {"abc", 1}});
  CHECK(ext.mode() == TokenBudgeter::Mode::external);
  CHECK(ext.count("hello world") == 2);
  CHECK_THROWS_AS(ext.count("unknown"), InputError);
  CHECK(ext.chars_for(3.0) == doctest::Approx(14.0 / 3.0 * 3.0));
}

TEST_CASE("numeric mutation rules") {
  auto pinned = [](std::int64_t v) {
    return [v](std::int64_t lo, std::int64_t hi) { return std::clamp(v, lo, hi); };
  };
  CHECK(mutate_numeric_answer("1969", pinned(7)) == "1976");
  Rng rng(1);
  const std::string m = mutate_numeric_answer("42527", rng);
  CHECK(m.size() == 5);
  CHECK(m != "42527");
  CHECK(m[0] != '0');
  CHECK_THROWS_AS(mutate_numeric_answer("19a9", rng), InputError);
  CHECK_THROWS_AS(mutate_numeric_answer("", rng), InputError);
  CHECK_THROWS_AS(mutate_numeric_answer("-5", rng), InputError);
}

TEST_CASE("numeric mutation property sweep") {
  Rng rng(2024);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string answer;
    if (i % 3 == 0) {
      answer = std::to_string(rng.uniform_int(1000, 2100));
    } else {
      const auto digits = rng.uniform_int(1, 9);
      answer = std::to_string(rng.uniform_int(digits == 1 ? 0 : 1, 9));
      for (int d = 1; d < digits; ++d) answer += std::to_string(rng.uniform_int(0, 9));
    }
    const std::string out = mutate_numeric_answer(answer, rng);
    const long v = std::stol(answer), w = std::stol(out);
    bool ok = digits_only(out) && out != answer;
    if (v >= 1000 && v <= 2100) {
      ok = ok && std::abs(w - v) <= 10 && w >= 1000 && w <= 2100;
    } else {
      ok = ok && out.size() == answer.size() && (out.size() == 1 || out[0] != '0');
    }
    violations += !ok;
  }
  CHECK(violations == 0);
}

TEST_CASE("boundary-aware occurrences") {
  CHECK(find_occurrences("in 1895 and 18950 and a1895", "1895") == std::vector<std::size_t>{3, 23});
  CHECK(find_occurrences("Paris and Parisian", "Paris") == std::vector<std::size_t>{0});
  CHECK(replace_occurrences("1895, 1895x 218950 (1895)", "1895", "1901") ==
        "1901, 1901x 218950 (1901)");
}

TEST_CASE("altqa replaces every occurrence") {
  const QARecord rec{
      "The hall opened in 1895. Repairs followed 1895 floods, and by 1895 the roof was new. "
      "It is not to be confused with the 18950 figure.",
      "When did the hall open?", "1895"};
  Rng rng(5);
  const TaskSample s = build_altqa_sample(rec, {AnswerLocation::middle, QuestionLocation::end}, 60,
                                          TokenBudgeter(), rng,
                                          std::vector<std::string>{std::string(400, 'x') + " filler text"});
  const auto parts = split_qa_prompt(s.prompt);
  REQUIRE(parts.has_value());
  CHECK(first_standalone(s.prompt, "1895") == std::string::npos);
  CHECK(s.answer != "1895");
  CHECK(find_occurrences(s.prompt, s.answer).size() >= 1);
  const TaskSample full = build_altqa_sample(rec, {AnswerLocation::start, QuestionLocation::end},
                                             80, TokenBudgeter(), rng);
  CHECK(first_standalone(full.prompt, "1895") == std::string::npos);
  CHECK(find_occurrences(full.prompt, full.answer).size() >= 3);
}

TEST_CASE("altqa errors") {
  Rng rng(6);
  const QARecord missing{"No numbers here at all.", "When?", "1901"};
  CHECK_THROWS_AS(build_altqa_sample(missing, {}, 100, TokenBudgeter(), rng), ConsistencyError);
  const QARecord text{"The river Tane flows east.", "Which river?", "Tane"};
  CHECK_THROWS_AS(build_altqa_sample(text, {}, 100, TokenBudgeter(), rng), InputError);
  const QARecord ok{"It was built in 1901 by hand.", "When?", "1901"};
  CHECK_THROWS_AS(build_altqa_sample(ok, {}, 5, TokenBudgeter(), rng), PlacementError);
}

TEST_CASE("placement, question side, budget and leak freedom over the sample corpus") {
  const auto corpus = sample_corpus();
  REQUIRE(corpus.size() >= 10);
  for (Task task : {Task::altqa, Task::ffqa}) {
    GenOptions opt;
    opt.task = task;
    opt.count = 4;
    opt.lengths = {400, 1500, 4000};
    opt.answer_locations = {AnswerLocation::start, AnswerLocation::middle, AnswerLocation::end};
    opt.question_locations = {QuestionLocation::start, QuestionLocation::end};
    opt.seed = 77;
    const auto samples = generate_dataset(opt, corpus);
    CHECK(samples.size() == 4 * 3 * 3 * 2);
    for (const auto& s : samples) {
      CAPTURE(s.id);
      const auto parts = split_qa_prompt(s.prompt);
      REQUIRE(parts.has_value());
      const std::size_t first = first_standalone(parts->document, s.answer);
      REQUIRE(first != std::string::npos);
      const double rel = double(first) / double(parts->document.size());
      switch (s.answer_location) {
        case AnswerLocation::start: CHECK(rel < 0.1); break;
        case AnswerLocation::middle: CHECK((rel >= 0.1 && rel < 0.9)); break;
        case AnswerLocation::end: CHECK(rel >= 0.9); break;
        default: FAIL("missing placement");
      }
      const auto q_pos = s.prompt.find(parts->question);
      const auto d_pos = s.prompt.find(parts->document);
      if (s.question_location == QuestionLocation::start) {
        CHECK(q_pos < d_pos);
      } else {
        CHECK(q_pos > d_pos);
      }
      CHECK(std::fabs(TokenBudgeter().count(s.prompt) - s.target_tokens) <= 0.15 * s.target_tokens);
      CHECK(s.prompt.find(s.answer) != std::string::npos);
    }
  }
}

TEST_CASE("altqa prompts never contain the original answer") {
  const auto corpus = sample_corpus();
  GenOptions opt;
  opt.task = Task::altqa;
  opt.count = 5;
  opt.lengths = {600, 2000};
  opt.answer_locations = {AnswerLocation::start, AnswerLocation::middle, AnswerLocation::end};
  opt.question_locations = {QuestionLocation::start, QuestionLocation::end};
  opt.seed = 3;
  std::vector<std::string> originals;
  for (const auto& r : corpus) {
    if (digits_only(r.answer)) originals.push_back(r.answer);
  }
  for (const auto& s : generate_dataset(opt, corpus)) {
    // The mutated answer differs from the source record it came from; find
    // that record by its question.
    const auto parts = split_qa_prompt(s.prompt);
    REQUIRE(parts.has_value());
    for (const auto& r : corpus) {
      if (r.question.substr(0, 20) != parts->question.substr(0, 20)) continue;
      CHECK(s.answer != r.answer);
      CHECK(first_standalone(s.prompt, r.answer) == std::string::npos);
    }
  }
}

TEST_CASE("ffqa keeps the answer and is deterministic") {
  const auto corpus = sample_corpus();
  Rng a(8), b(8);
  const QARecord& rec = corpus[4];
  const TaskSample s1 = build_ffqa_sample(rec, {AnswerLocation::end, QuestionLocation::start}, 900,
                                          TokenBudgeter(), a, std::vector<std::string>{corpus[0].document, corpus[1].document});
  const TaskSample s2 = build_ffqa_sample(rec, {AnswerLocation::end, QuestionLocation::start}, 900,
                                          TokenBudgeter(), b, std::vector<std::string>{corpus[0].document, corpus[1].document});
  CHECK(s1.prompt == s2.prompt);
  CHECK(s1.answer == rec.answer);
  CHECK(s1.prompt.find(rec.answer) != std::string::npos);
}

TEST_CASE("toy retrieval samples") {
  const ToyVocab v;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    const int pairs = 1 + static_cast<int>(seed % 60);
    const ToyRetrieval t = gen_toy_retrieval(pairs, v, rng);
    REQUIRE(t.tokens.size() == static_cast<std::size_t>(2 * pairs + 3));
    std::set<int> keys;
    for (int i = 0; i < pairs; ++i) {
      CHECK(v.is_key(t.tokens[2 * i]));
      CHECK(v.is_value(t.tokens[2 * i + 1]));
      keys.insert(t.tokens[2 * i]);
    }
    CHECK(keys.size() == static_cast<std::size_t>(pairs));
    CHECK(t.tokens[2 * pairs] == ToyVocab::kQuery);
    const int queried = t.tokens[2 * pairs + 1];
    int want = -1;
    for (int i = 0; i < pairs; ++i) {
      if (t.tokens[2 * i] == queried) want = t.tokens[2 * i + 1];
    }
    CHECK(t.answer() == want);
    CHECK(t.prompt().size() == t.answer_begin);
  }
  Rng rng(1);
  const ToyRetrieval one = gen_toy_retrieval(1, v, rng);
  CHECK(one.tokens[3] == one.tokens[0]);
  CHECK(one.answer() == one.tokens[1]);
  CHECK_THROWS_AS(gen_toy_retrieval(129, v, rng), CapacityError);
  CHECK(toy_pairs_for_length(128) == 62);
  CHECK(toy_pairs_for_length(256) == 126);
  CHECK(toy_pairs_for_length(256, ToyVocab{32, 4}) == 32);
  CHECK(parse_token_text(token_text(std::vector<int>{3, 14, 159})) == std::vector<int>{3, 14, 159});
  CHECK_THROWS_AS(parse_token_text("1 x 2"), InputError);
}

TEST_CASE("dataset ids, seeds and ordering") {
  GenOptions opt;
  opt.task = Task::toy_retrieval;
  opt.count = 3;
  opt.lengths = {32, 64};
  opt.seed = 100;
  const auto ds = generate_dataset(opt);
  REQUIRE(ds.size() == 6);
  for (std::size_t k = 0; k < ds.size(); ++k) {
    CHECK(ds[k].seed == 100 + k);
    CHECK(ds[k].target_tokens == opt.lengths[k / 3]);
  }
  CHECK(jsonl_text(ds) == jsonl_text(generate_dataset(opt)));
  opt.count = 0;
  CHECK(generate_dataset(opt).empty());
  opt.task = Task::altqa;
  opt.count = 1;
  CHECK_THROWS_AS(generate_dataset(opt), InputError);
}
