#pragma once

// Toy retrieval experiments: the training stream fed to the transformer,
// retrieval accuracy at a chosen length and scale, and the run configuration
// read by the CLI.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ropelab/eval.hpp"
#include "ropelab/model.hpp"
#include "ropelab/taskgen.hpp"

namespace ropelab {

enum class ToyStream { retrieval, constant };

struct ToyTaskOptions {
  ToyVocab vocab;
  ToyStream stream = ToyStream::retrieval;
  int warm_len = 48;      // sequence length during the first warm_steps steps
  int warm_steps = 1500;
  int queries = 8;        // queries appended per training sequence
  std::uint64_t data_seed = 0;
};

// Pairs followed by `queries` triples `Q k v`, fitted into `length` tokens;
// each queried value is a scored target.
TrainExample toy_training_example(const ToyTaskOptions& task, int length, Rng& rng);

// Example i belongs to step i / batch_size; warm steps use warm_len, later
// steps the model's train_ctx.
ExampleSource toy_example_source(const ToyTaskOptions& task, int train_ctx, int batch_size);

// Greedy single-token retrieval accuracy on `count` samples of `length`
// tokens; sample j is drawn from Rng(seed + j), as generate_dataset does.
// `encoding` overrides eval-time fields (see generate()).
double toy_accuracy(const ModelParams& params, const ModelConfig& config,
                    const EncodingConfig& encoding, const ToyVocab& vocab, int length, int count,
                    std::uint64_t seed);

// In-process provider backed by the model's next-token distribution.
LogProbProvider model_logprob_provider(const ModelParams& params, const ModelConfig& config,
                                       const EncodingConfig& encoding);

struct ToyRunConfig {
  ModelConfig model;
  TrainOptions train;
  ToyTaskOptions task;
  int eval_samples = 100;  // accuracy samples reported after training
  std::uint64_t eval_seed = 90001;

  // Model and encoding keys plus: steps batch_size lr beta1 beta2 eps grad_clip
  // warmup_steps eval_examples stream num_keys num_values warm_len warm_steps
  // queries data_seed eval_samples eval_seed. `vocab` defaults to the toy vocabulary size.
  static ToyRunConfig from_key_values(KeyValues& kv);
  static ToyRunConfig parse(std::string_view text);
  std::vector<std::pair<std::string, std::string>> key_values() const;
  std::string to_text() const;
  void validate() const;
};

// The configuration used for the extrapolation trend experiment.
ToyRunConfig default_toy_run(std::uint64_t seed);

}  // namespace ropelab
