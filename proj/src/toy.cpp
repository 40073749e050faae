#include "ropelab/toy.hpp"

#include <algorithm>

#include "ropelab/error.hpp"

namespace ropelab {

TrainExample toy_training_example(const ToyTaskOptions& task, int length, Rng& rng) {
  if (task.queries < 1) throw InvalidParameter("queries must be >= 1");
  const int max_pairs = std::min(task.vocab.num_keys, (length - 3 * task.queries) / 2);
  if (max_pairs < 1) {
    throw InvalidParameter("length " + std::to_string(length) + " cannot hold " +
                           std::to_string(task.queries) + " queries");
  }
  const int pairs = static_cast<int>(rng.uniform_int(1, max_pairs));
  const ToyRetrieval base = gen_toy_retrieval(pairs, task.vocab, rng);
  std::vector<int> full(base.tokens.begin(), base.tokens.begin() + 2 * pairs);
  for (int q = 0; q < task.queries; ++q) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, pairs - 1));
    full.push_back(ToyVocab::kQuery);
    full.push_back(full[2 * i]);
    full.push_back(full[2 * i + 1]);
  }
  TrainExample ex;
  ex.tokens.assign(full.begin(), full.end() - 1);
  ex.targets.assign(ex.tokens.size(), kIgnoreTarget);
  for (int q = 0; q < task.queries; ++q) {
    const std::size_t key_pos = 2 * static_cast<std::size_t>(pairs) + 3 * q + 1;
    ex.targets[key_pos] = full[key_pos + 1];
  }
  return ex;
}

ExampleSource toy_example_source(const ToyTaskOptions& task, int train_ctx, int batch_size) {
  if (batch_size < 1) throw InvalidParameter("batch_size must be >= 1");
  if (task.stream == ToyStream::constant) {
    Rng rng(task.data_seed);
    const TrainExample fixed = toy_training_example(task, train_ctx, rng);
    return [fixed](std::uint64_t) { return fixed; };
  }
  return [task, train_ctx, batch_size](std::uint64_t index) {
    Rng rng(Rng::derive(task.data_seed, index));
    const std::uint64_t step = index / static_cast<std::uint64_t>(batch_size);
    const int length =
        step < static_cast<std::uint64_t>(std::max(0, task.warm_steps)) ? task.warm_len : train_ctx;
    return toy_training_example(task, length, rng);
  };
}

double toy_accuracy(const ModelParams& params, const ModelConfig& config,
                    const EncodingConfig& encoding, const ToyVocab& vocab, int length, int count,
                    std::uint64_t seed) {
  if (count <= 0) return 0.0;
  const EncodingConfig enc = with_eval_fields(config.encoding, encoding);
  int ok = 0;
  for (int j = 0; j < count; ++j) {
    Rng rng(seed + static_cast<std::uint64_t>(j));
    const ToyRetrieval s = gen_toy_retrieval(toy_pairs_for_length(length, vocab), vocab, rng);
    const Matrix logits = forward(params, config, s.prompt(), enc, Phase::eval);
    Eigen::Index best = 0;
    logits.row(logits.rows() - 1).maxCoeff(&best);
    ok += static_cast<int>(best) == s.answer();
  }
  return static_cast<double>(ok) / count;
}

LogProbProvider model_logprob_provider(const ModelParams& params, const ModelConfig& config,
                                       const EncodingConfig& encoding) {
  const EncodingConfig enc = with_eval_fields(config.encoding, encoding);
  return [&params, config, enc](const std::vector<int>& tokens) {
    return next_token_logprobs(params, config, tokens, enc);
  };
}

// ---------------------------------------------------------------------------
// Run configuration

ToyRunConfig ToyRunConfig::from_key_values(KeyValues& kv) {
  ToyRunConfig c = default_toy_run(0);
  auto integer = [&kv](const char* key, int& dst) {
    if (auto v = kv.take(key)) dst = static_cast<int>(parse_int(key, *v));
  };
  auto real = [&kv](const char* key, double& dst) {
    if (auto v = kv.take(key)) dst = parse_double(key, *v);
  };
  integer("steps", c.train.steps);
  integer("batch_size", c.train.batch_size);
  real("lr", c.train.lr);
  real("beta1", c.train.beta1);
  real("beta2", c.train.beta2);
  real("eps", c.train.eps);
  real("grad_clip", c.train.grad_clip);
  integer("warmup_steps", c.train.warmup_steps);
  integer("eval_examples", c.train.eval_examples);
  if (auto v = kv.take("stream")) {
    if (*v == "retrieval") {
      c.task.stream = ToyStream::retrieval;
    } else if (*v == "constant") {
      c.task.stream = ToyStream::constant;
    } else {
      throw InvalidParameter("stream must be retrieval or constant: " + *v);
    }
  }
  integer("num_keys", c.task.vocab.num_keys);
  integer("num_values", c.task.vocab.num_values);
  integer("warm_len", c.task.warm_len);
  integer("warm_steps", c.task.warm_steps);
  integer("queries", c.task.queries);
  if (auto v = kv.take("data_seed")) {
    c.task.data_seed = static_cast<std::uint64_t>(parse_int("data_seed", *v));
  }
  integer("eval_samples", c.eval_samples);
  if (auto v = kv.take("eval_seed")) {
    c.eval_seed = static_cast<std::uint64_t>(parse_int("eval_seed", *v));
  }
  const bool has_vocab = kv.contains("vocab");
  // Unset model keys keep the trend-experiment model.
  for (const auto& [k, v] : c.model.key_values()) {
    if (k == "vocab" || k == "d" || k == "scale_eval") continue;
    if (!kv.contains(k)) kv.set(k, v);
  }
  c.model = ModelConfig::from_key_values(kv);
  if (!has_vocab) c.model.vocab = c.task.vocab.size();
  return c;
}

ToyRunConfig ToyRunConfig::parse(std::string_view text) {
  KeyValues kv = KeyValues::parse(text);
  ToyRunConfig c = from_key_values(kv);
  kv.expect_consumed();
  c.validate();
  return c;
}

std::vector<std::pair<std::string, std::string>> ToyRunConfig::key_values() const {
  auto out = model.key_values();
  auto add = [&out](const char* k, std::string v) { out.emplace_back(k, std::move(v)); };
  add("steps", std::to_string(train.steps));
  add("batch_size", std::to_string(train.batch_size));
  add("lr", format_double(train.lr));
  add("beta1", format_double(train.beta1));
  add("beta2", format_double(train.beta2));
  add("eps", format_double(train.eps));
  add("grad_clip", format_double(train.grad_clip));
  add("warmup_steps", std::to_string(train.warmup_steps));
  add("eval_examples", std::to_string(train.eval_examples));
  add("stream", task.stream == ToyStream::constant ? "constant" : "retrieval");
  add("num_keys", std::to_string(task.vocab.num_keys));
  add("num_values", std::to_string(task.vocab.num_values));
  add("warm_len", std::to_string(task.warm_len));
  add("warm_steps", std::to_string(task.warm_steps));
  add("queries", std::to_string(task.queries));
  add("data_seed", std::to_string(task.data_seed));
  add("eval_samples", std::to_string(eval_samples));
  add("eval_seed", std::to_string(eval_seed));
  return out;
}

std::string ToyRunConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : key_values()) out += k + " = " + v + "\n";
  return out;
}

void ToyRunConfig::validate() const {
  model.validate();
  if (model.vocab != task.vocab.size()) {
    throw InvalidParameter("vocab " + std::to_string(model.vocab) +
                           " does not match the toy vocabulary size " +
                           std::to_string(task.vocab.size()));
  }
  if (task.vocab.num_keys < 1 || task.vocab.num_values < 1) {
    throw InvalidParameter("num_keys and num_values must be >= 1");
  }
  if (train.steps < 0 || train.batch_size < 1 || !(train.lr > 0.0)) {
    throw InvalidParameter("steps >= 0, batch_size >= 1 and lr > 0 are required");
  }
  if (task.queries < 1 || task.warm_steps < 0) {
    throw InvalidParameter("queries >= 1 and warm_steps >= 0 are required");
  }
  if (model.train_ctx - 3 * task.queries < 2 ||
      (task.warm_steps > 0 && task.warm_len - 3 * task.queries < 2)) {
    throw InvalidParameter("training lengths are too short for the query count");
  }
  if (eval_samples < 0) throw InvalidParameter("eval_samples must be >= 0");
}

ToyRunConfig default_toy_run(std::uint64_t seed) {
  ToyRunConfig c;
  c.task.vocab = ToyVocab{128, 16};
  c.task.warm_len = 48;
  c.task.warm_steps = 1500;
  c.task.queries = 8;
  c.task.data_seed = seed * 1000 + 7;
  c.model.vocab = c.task.vocab.size();
  c.model.d_model = 32;
  c.model.n_heads = 2;
  c.model.head_dim = 16;
  c.model.n_layers = 2;
  c.model.ff_mult = 2;
  c.model.train_ctx = 128;
  c.model.encoding.d = 16;
  c.model.seed = seed;
  c.train.steps = 4000;
  c.train.batch_size = 16;
  c.train.lr = 2e-3;
  c.train.warmup_steps = 50;
  return c;
}

}  // namespace ropelab
