#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ropelab/error.hpp"
#include "ropelab/eval.hpp"
#include "ropelab/records.hpp"
#include "ropelab/toy.hpp"

using namespace ropelab;

namespace {

TaskSample sample(std::string id, std::string answer, int target = 2500,
                  AnswerLocation a = AnswerLocation::middle,
                  QuestionLocation q = QuestionLocation::end, Task task = Task::ffqa) {
  TaskSample s;
  s.id = std::move(id);
  s.task = task;
  s.answer = std::move(answer);
  s.target_tokens = target;
  s.answer_location = a;
  s.question_location = q;
  return s;
}

std::vector<TaskSample> stratified_samples() {
  return {
      sample("s1", "Lisk", 2400, AnswerLocation::start, QuestionLocation::end),
      sample("s2", "1847", 2500, AnswerLocation::start, QuestionLocation::end),
      sample("s3", "1847", 2600, AnswerLocation::middle, QuestionLocation::end),
      sample("s4", "boathouse", 3600, AnswerLocation::middle, QuestionLocation::end),
      sample("s5", "eleven", 30000, AnswerLocation::end, QuestionLocation::start),
  };
}

std::vector<OutputRecord> stratified_outputs() {
  return {{"s5", "Eleven"}, {"s1", "it is lisk."}, {"s2", "1848"}, {"s3", "Answer: 1847"}};
}

}  // namespace

TEST_CASE("normalization") {
  CHECK(normalize_answer("  <42527>. ") == "42527");
  CHECK(normalize_answer("The Wenlow Bridge!") == "the wenlow bridge");
  CHECK(normalize_answer("...") == "");
}

TEST_CASE("scoring") {
  CHECK(score_sample(sample("a", "42527"), {"a", "The value is <42527>."}));
  CHECK(score_sample(sample("a", "1976"), {"a", "It happened in 01976 or so"}));
  CHECK_FALSE(score_sample(sample("a", "1976"), {"a", "19761"}));
  CHECK_FALSE(score_sample(sample("a", "1976"), {"a", "21976"}));
  CHECK_FALSE(score_sample(sample("a", "1976"), {"a", "no number"}));
  CHECK(score_sample(sample("a", "Lisk"), {"a", "the LISK river"}));
  CHECK_FALSE(score_sample(sample("a", "Lisk"), {"a", "Liskard"}));
  CHECK_FALSE(score_sample(sample("a", "..."), {"a", "..."}));
  CHECK_THROWS_AS(score_sample(sample("a", "1"), {"b", "1"}), PairingError);
}

TEST_CASE("bucketing") {
  const std::vector<int> b = {2500, 3600};
  CHECK(bucket_for(100, b) == 2500);
  CHECK(bucket_for(2500, b) == 2500);
  CHECK(bucket_for(2501, b) == 3600);
  CHECK(bucket_for(9000, b) == 9000);
  CHECK(bucket_for(777, {}) == 777);
}

TEST_CASE("aggregate over a hand-enumerated stratified set") {
  const auto samples = stratified_samples();
  const auto outputs = stratified_outputs();
  const EvalReport r = aggregate(samples, outputs);
  CHECK(r.task == "ffqa");
  CHECK(r.n == 5);
  CHECK(r.correct == 3);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].bucket == 2500);
  CHECK(r.rows[0].n == 2);
  CHECK(r.rows[0].correct == 1);
  CHECK(r.rows[1].bucket == 3600);
  CHECK(r.rows[1].answer_location == AnswerLocation::middle);
  CHECK(r.rows[1].correct == 1);
  CHECK(r.rows[2].bucket == 30000);
  CHECK(r.rows[2].accuracy() == 1.0);

  CHECK(render_tables(r, TableFormat::csv) ==
        read_text_file(std::string(ROPELAB_TEST_DATA) + "/golden_report.csv"));
  CHECK(render_tables(r, TableFormat::markdown) ==
        read_text_file(std::string(ROPELAB_TEST_DATA) + "/golden_report.md"));
}

TEST_CASE("aggregate is invariant to input order") {
  auto samples = stratified_samples();
  auto outputs = stratified_outputs();
  const std::string want = render_tables(aggregate(samples, outputs), TableFormat::csv);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    for (std::size_t i = samples.size(); i > 1; --i) {
      std::swap(samples[i - 1], samples[rng.uniform_int(0, static_cast<std::int64_t>(i) - 1)]);
    }
    for (std::size_t i = outputs.size(); i > 1; --i) {
      std::swap(outputs[i - 1], outputs[rng.uniform_int(0, static_cast<std::int64_t>(i) - 1)]);
    }
    CHECK(render_tables(aggregate(samples, outputs), TableFormat::csv) == want);
  }
}

TEST_CASE("aggregate pairing errors and edge cases") {
  auto samples = stratified_samples();
  CHECK_THROWS_AS(aggregate(samples, std::vector<OutputRecord>{{"ghost", "x"}}), PairingError);
  CHECK_THROWS_AS(aggregate(samples, std::vector<OutputRecord>{{"s1", "x"}, {"s1", "y"}}),
                  PairingError);
  auto dup = samples;
  dup.push_back(samples[0]);
  CHECK_THROWS_AS(aggregate(dup, std::vector<OutputRecord>{}), PairingError);

  const EvalReport none = aggregate(samples, std::vector<OutputRecord>{});
  CHECK(none.n == 5);
  CHECK(none.correct == 0);

  const EvalReport empty = aggregate(std::vector<TaskSample>{}, std::vector<OutputRecord>{});
  CHECK(render_tables(empty, TableFormat::csv) ==
        "task,context_tokens,answer_location,question_location,n,correct,accuracy\n");

  samples.push_back(sample("s6", "x", 2500, AnswerLocation::na, QuestionLocation::end,
                           Task::longchat_lines));
  CHECK(aggregate(samples, std::vector<OutputRecord>{}).task == "mixed");
  CHECK(parse_table_format("markdown") == TableFormat::markdown);
  CHECK_THROWS_AS(parse_table_format("html"), InvalidParameter);
}

TEST_CASE("perplexity windows") {
  const auto w = perplexity_windows(1000, 300, 100);
  REQUIRE(w.size() == 3);
  for (std::size_t k = 0; k < w.size(); ++k) {
    CHECK(w[k].begin == 300 * k);
    CHECK(w[k].end == 300 * (k + 1));
    CHECK(w[k].scored_begin == w[k].end - 100);
  }
  CHECK_THROWS_AS(perplexity_windows(1000, 100, 100), InvalidParameter);
  CHECK_THROWS_AS(perplexity_windows(1000, 300, 0), InvalidParameter);
  CHECK_THROWS_AS(perplexity_windows(299, 300, 100), InputError);
}

TEST_CASE("perplexity of reference providers") {
  std::vector<int> doc(2048);
  for (std::size_t i = 0; i < doc.size(); ++i) doc[i] = static_cast<int>(i * 7 % 50);

  const int V = 50;
  const LogProbProvider uniform = [V](const std::vector<int>& t) {
    return std::vector<double>(t.size() - 1, -std::log(double(V)));
  };
  const auto u = perplexity(uniform, doc, 512, 256);
  CHECK(u.windows == 4);
  CHECK(std::fabs(u.perplexity - V) < 1e-9);

  const LogProbProvider perfect = [](const std::vector<int>& t) {
    return std::vector<double>(t.size() - 1, 0.0);
  };
  CHECK(perplexity(perfect, doc, 512, 256).perplexity == 1.0);

  // Relabelling token ids leaves a token-agnostic provider unchanged.
  std::vector<int> relabelled = doc;
  for (int& t : relabelled) t = (t * 13 + 5) % V;
  CHECK(perplexity(uniform, relabelled, 512, 256).perplexity == u.perplexity);

  // A provider whose log-probs worsen with position gives larger perplexity at
  // longer windows.
  const LogProbProvider decaying = [](const std::vector<int>& t) {
    std::vector<double> out(t.size() - 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -0.001 * double(i + 1);
    return out;
  };
  double prev = 0.0;
  for (int n : {300, 400, 600, 1000}) {
    const double p = perplexity(decaying, doc, n, 256).perplexity;
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("perplexity provider errors") {
  std::vector<int> doc(600, 3);
  const LogProbProvider shortp = [](const std::vector<int>& t) {
    return std::vector<double>(t.size() / 2, -1.0);
  };
  CHECK_THROWS_AS(perplexity(shortp, doc, 300, 100), ConsistencyError);
  const LogProbProvider nanp = [](const std::vector<int>& t) {
    return std::vector<double>(t.size() - 1, std::nan(""));
  };
  CHECK_THROWS_AS(perplexity(nanp, doc, 300, 100), NumericOverflow);
}

TEST_CASE("model perplexity equals exp of its loss on the scored span") {
  ModelConfig cfg;
  cfg.vocab = 20;
  cfg.d_model = 16;
  cfg.head_dim = 8;
  cfg.n_heads = 2;
  cfg.n_layers = 1;
  cfg.train_ctx = 32;
  cfg.encoding.d = 8;
  cfg.seed = 5;
  const ModelParams params = init_params(cfg);
  std::vector<int> doc(96);
  Rng rng(2);
  for (int& t : doc) t = static_cast<int>(rng.uniform_int(0, 19));

  const auto result = perplexity(model_logprob_provider(params, cfg, cfg.encoding), doc, 32, 8);
  CHECK(result.windows == 3);

  double total = 0.0;
  for (int w = 0; w < 3; ++w) {
    const std::vector<int> tokens(doc.begin() + 32 * w, doc.begin() + 32 * (w + 1));
    const Matrix logits = forward(params, cfg, tokens, cfg.encoding);
    std::vector<int> targets(tokens.size(), kIgnoreTarget);
    for (int j = 32 - 8; j < 32; ++j) targets[j - 1] = tokens[j];
    total += loss(logits, targets);
  }
  CHECK(std::fabs(result.perplexity - std::exp(total / 3)) <= 1e-8 * result.perplexity);
}

TEST_CASE("subprocess provider") {
  const LogProbProvider p = subprocess_provider(ROPELAB_UNIFORM_PROVIDER " 10");
  const auto lp = p({1, 2, 3, 4});
  REQUIRE(lp.size() == 3);
  for (double x : lp) CHECK(std::fabs(x + std::log(10.0)) < 1e-12);
  const auto again = p({5, 6});
  CHECK(again.size() == 1);
  std::vector<int> doc(1000, 1);
  CHECK(std::fabs(perplexity(p, doc, 500, 100).perplexity - 10.0) < 1e-9);
}
