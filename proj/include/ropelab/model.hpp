#pragma once

// Minimal decoder-only transformer with hand-written backpropagation:
// pre-norm RMS normalization, multi-head causal attention with rotary
// encodings (any Scheme), SiLU-gated feed-forward, untied output projection.
// Everything runs in double precision on one thread.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ropelab/attention.hpp"
#include "ropelab/config.hpp"

namespace ropelab {

struct ModelConfig {
  int vocab = 64;
  int d_model = 32;
  int n_heads = 2;
  int head_dim = 16;
  int n_layers = 2;
  int ff_mult = 2;
  int train_ctx = 128;
  EncodingConfig encoding;
  std::uint64_t seed = 0;

  int ff_dim() const { return ff_mult * d_model; }
  void validate() const;

  // Model keys (vocab d_model n_heads head_dim n_layers ff_mult train_ctx
  // model_seed) plus all EncodingConfig keys; `d` defaults to head_dim.
  static ModelConfig from_key_values(KeyValues& kv);
  std::vector<std::pair<std::string, std::string>> key_values() const;
};

struct LayerParams {
  Matrix norm_attn;  // 1 x d_model
  Matrix wq, wk, wv, wo;
  Matrix norm_ff;    // 1 x d_model
  Matrix w_gate, w_up, w_down;
};

struct ModelParams {
  Matrix embed;      // vocab x d_model
  std::vector<LayerParams> layers;
  Matrix norm_out;   // 1 x d_model
  Matrix w_out;      // d_model x vocab

  // Stable (name, tensor) listing; defines checkpoint and optimizer order.
  std::vector<std::pair<std::string, Matrix*>> tensors();
  std::vector<std::pair<std::string, const Matrix*>> tensors() const;

  std::size_t parameter_count() const;
  ModelParams zeros_like() const;
  bool all_finite() const;
};

using Gradients = ModelParams;

ModelParams init_params(const ModelConfig& config);

// Causal next-token logits, n x vocab. The encoding replaces the model's own
// (callers pass config.encoding unless overriding eval-time fields).
Matrix forward(const ModelParams& params, const ModelConfig& config,
               const std::vector<int>& tokens, const EncodingConfig& encoding,
               Phase phase = Phase::eval, Rng* position_rng = nullptr);

// Same, with an explicit position schedule (one entry per token).
Matrix forward_with_positions(const ModelParams& params, const ModelConfig& config,
                              const std::vector<int>& tokens, const EncodingConfig& encoding,
                              const PositionSchedule& positions);

inline constexpr int kIgnoreTarget = -1;

// Mean natural-log negative log-likelihood over rows whose target is not
// kIgnoreTarget.
double loss(const Matrix& logits, const std::vector<int>& targets);

struct LossAndGrad {
  double loss = 0.0;
  int counted = 0;
  Gradients grads;
};

// Analytic gradients of loss(forward(tokens), targets) with respect to every
// parameter.
LossAndGrad backward(const ModelParams& params, const ModelConfig& config,
                     const std::vector<int>& tokens, const std::vector<int>& targets,
                     const EncodingConfig& encoding, Phase phase = Phase::train,
                     Rng* position_rng = nullptr);

LossAndGrad backward_with_positions(const ModelParams& params, const ModelConfig& config,
                                    const std::vector<int>& tokens,
                                    const std::vector<int>& targets,
                                    const EncodingConfig& encoding,
                                    const PositionSchedule& positions);

struct TrainExample {
  std::vector<int> tokens;
  std::vector<int> targets;  // same length; kIgnoreTarget where unscored
};

// Deterministic example stream: example i is source(i).
using ExampleSource = std::function<TrainExample(std::uint64_t index)>;

struct TrainOptions {
  int steps = 300;
  int batch_size = 8;
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.95;
  double eps = 1e-8;
  double grad_clip = 1.0;  // global-norm clip; <= 0 disables
  int warmup_steps = 0;    // linear warmup, then constant
  int eval_examples = 32;
  std::uint64_t eval_offset = 1ULL << 40;  // eval examples are source(eval_offset + j)
};

struct TrainReport {
  std::vector<double> losses;
  double final_eval_loss = 0.0;
  int steps = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  TrainOptions options;

  // "step,loss" header then one row per step.
  std::string to_csv() const;
};

struct TrainResult {
  ModelParams params;
  TrainReport report;
};

// Adam training from `init` (or fresh parameters when null). Throws
// Divergence on a non-finite loss.
TrainResult train(const ModelConfig& config, const ExampleSource& source,
                  const TrainOptions& options, const ModelParams* init = nullptr,
                  const std::function<void(int, double)>& on_step = {});

// Continue training existing parameters under a different encoding; by
// default for a quarter of `pretrain_steps`.
TrainResult continue_training(const ModelConfig& config, const ModelParams& params,
                              const EncodingConfig& new_encoding, const ExampleSource& source,
                              TrainOptions options, int pretrain_steps);

double evaluate_loss(const ModelParams& params, const ModelConfig& config,
                     const ExampleSource& source, std::uint64_t first, int count,
                     const EncodingConfig& encoding);

// Greedy decoding. `encoding` replaces only eval-time fields (scale_eval,
// rand_upper, precision_mode, seed) of the trained configuration.
std::vector<int> generate(const ModelParams& params, const ModelConfig& config,
                          const std::vector<int>& prompt, int max_new,
                          const EncodingConfig& encoding);

// The trained encoding with the eval-time fields of `override_with` applied.
EncodingConfig with_eval_fields(const EncodingConfig& trained, const EncodingConfig& override_with);

// Log-probabilities of each observed next token, length n - 1.
std::vector<double> next_token_logprobs(const ModelParams& params, const ModelConfig& config,
                                        const std::vector<int>& tokens,
                                        const EncodingConfig& encoding);

// Checkpoint container (see docs/checkpoint_format.md).
void save_checkpoint(const std::string& path, const ModelConfig& config,
                     const ModelParams& params);
std::string checkpoint_text(const ModelConfig& config, const ModelParams& params);
std::pair<ModelConfig, ModelParams> load_checkpoint(const std::string& path);
std::pair<ModelConfig, ModelParams> parse_checkpoint(const std::string& text);

}  // namespace ropelab
