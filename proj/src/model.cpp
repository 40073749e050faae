#include "ropelab/model.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "ropelab/error.hpp"

namespace ropelab {

// ---------------------------------------------------------------------------
// Configuration

void ModelConfig::validate() const {
  if (vocab < 1 || d_model < 1 || n_heads < 1 || head_dim < 1 || n_layers < 1 || ff_mult < 1) {
    throw InvalidParameter("model dimensions must all be positive");
  }
  if (head_dim % 2 != 0) throw InvalidDimension("head_dim must be even");
  if (d_model != n_heads * head_dim) {
    throw InvalidParameter("d_model must equal n_heads * head_dim");
  }
  if (train_ctx < 8) throw InvalidParameter("train_ctx must be >= 8");
  if (encoding.d != head_dim) {
    throw InvalidDimension("encoding d (" + std::to_string(encoding.d) +
                           ") must equal head_dim (" + std::to_string(head_dim) + ")");
  }
  encoding.validate();
}

ModelConfig ModelConfig::from_key_values(KeyValues& kv) {
  ModelConfig c;
  auto integer = [&kv](const char* key, int& dst) {
    if (auto v = kv.take(key)) dst = static_cast<int>(parse_int(key, *v));
  };
  integer("vocab", c.vocab);
  integer("d_model", c.d_model);
  integer("n_heads", c.n_heads);
  integer("head_dim", c.head_dim);
  integer("n_layers", c.n_layers);
  integer("ff_mult", c.ff_mult);
  integer("train_ctx", c.train_ctx);
  if (auto v = kv.take("model_seed")) c.seed = static_cast<std::uint64_t>(parse_int("model_seed", *v));
  const bool has_d = kv.contains("d");
  c.encoding = EncodingConfig::from_key_values(kv);
  if (!has_d) c.encoding.d = c.head_dim;
  return c;
}

std::vector<std::pair<std::string, std::string>> ModelConfig::key_values() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"vocab", std::to_string(vocab)},       {"d_model", std::to_string(d_model)},
      {"n_heads", std::to_string(n_heads)},   {"head_dim", std::to_string(head_dim)},
      {"n_layers", std::to_string(n_layers)}, {"ff_mult", std::to_string(ff_mult)},
      {"train_ctx", std::to_string(train_ctx)}, {"model_seed", std::to_string(seed)},
  };
  encoding.write_key_values(out);
  return out;
}

// ---------------------------------------------------------------------------
// Parameters

std::vector<std::pair<std::string, Matrix*>> ModelParams::tensors() {
  std::vector<std::pair<std::string, Matrix*>> out;
  out.emplace_back("embed", &embed);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    LayerParams& L = layers[l];
    out.emplace_back(p + "norm_attn", &L.norm_attn);
    out.emplace_back(p + "wq", &L.wq);
    out.emplace_back(p + "wk", &L.wk);
    out.emplace_back(p + "wv", &L.wv);
    out.emplace_back(p + "wo", &L.wo);
    out.emplace_back(p + "norm_ff", &L.norm_ff);
    out.emplace_back(p + "w_gate", &L.w_gate);
    out.emplace_back(p + "w_up", &L.w_up);
    out.emplace_back(p + "w_down", &L.w_down);
  }
  out.emplace_back("norm_out", &norm_out);
  out.emplace_back("w_out", &w_out);
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> ModelParams::tensors() const {
  auto mut = const_cast<ModelParams*>(this)->tensors();
  std::vector<std::pair<std::string, const Matrix*>> out;
  out.reserve(mut.size());
  for (auto& [name, ptr] : mut) out.emplace_back(std::move(name), ptr);
  return out;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [name, t] : tensors()) n += static_cast<std::size_t>(t->size());
  return n;
}

ModelParams ModelParams::zeros_like() const {
  ModelParams z = *this;
  for (auto& [name, t] : z.tensors()) t->setZero();
  return z;
}

bool ModelParams::all_finite() const {
  for (const auto& [name, t] : tensors()) {
    if (!t->allFinite()) return false;
  }
  return true;
}

namespace {

Matrix gaussian(Rng& rng, int rows, int cols, double stddev) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = stddev * rng.normal();
  return m;
}

}  // namespace

ModelParams init_params(const ModelConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int d = config.d_model, f = config.ff_dim();
  const double proj = 1.0 / std::sqrt(static_cast<double>(d));
  const double resid = proj / std::sqrt(2.0 * config.n_layers);
  ModelParams p;
  p.embed = gaussian(rng, config.vocab, d, 1.0);
  for (int l = 0; l < config.n_layers; ++l) {
    LayerParams L;
    L.norm_attn = Matrix::Ones(1, d);
    L.wq = gaussian(rng, d, d, proj);
    L.wk = gaussian(rng, d, d, proj);
    L.wv = gaussian(rng, d, d, proj);
    L.wo = gaussian(rng, d, d, resid);
    L.norm_ff = Matrix::Ones(1, d);
    L.w_gate = gaussian(rng, d, f, proj);
    L.w_up = gaussian(rng, d, f, proj);
    L.w_down = gaussian(rng, f, d, resid * std::sqrt(static_cast<double>(d) / f));
    p.layers.push_back(std::move(L));
  }
  p.norm_out = Matrix::Ones(1, d);
  p.w_out = gaussian(rng, d, config.vocab, proj);
  return p;
}

// ---------------------------------------------------------------------------
// Forward / backward

namespace {

constexpr double kNormEps = 1e-5;

struct NormCache {
  Matrix xhat;
  Vector inv_rms;
};

Matrix rms_norm(const Matrix& x, const Matrix& gain, NormCache& cache) {
  const Eigen::Index n = x.rows(), d = x.cols();
  cache.xhat.resize(n, d);
  cache.inv_rms.resize(n);
  Matrix out(n, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double ms = x.row(j).squaredNorm() / static_cast<double>(d);
    const double r = 1.0 / std::sqrt(ms + kNormEps);
    cache.inv_rms(j) = r;
    cache.xhat.row(j) = x.row(j) * r;
    out.row(j) = cache.xhat.row(j).cwiseProduct(gain.row(0));
  }
  return out;
}

Matrix rms_norm_backward(const Matrix& dy, const Matrix& gain, const NormCache& cache,
                         Matrix& dgain) {
  const Eigen::Index n = dy.rows(), d = dy.cols();
  dgain += dy.cwiseProduct(cache.xhat).colwise().sum();
  Matrix dx(n, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto dxhat = dy.row(j).cwiseProduct(gain.row(0));
    const double dot = dxhat.dot(cache.xhat.row(j)) / static_cast<double>(d);
    dx.row(j) = (dxhat - cache.xhat.row(j) * dot) * cache.inv_rms(j);
  }
  return dx;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct LayerCache {
  NormCache norm_attn;
  Matrix h_attn;
  Matrix q_rot, k_rot, v;
  std::vector<Matrix> probs;  // per head, n x n
  Matrix attn;
  NormCache norm_ff;
  Matrix h_ff;
  Matrix gate_pre, up, gate_act, hidden;
};

struct ForwardCache {
  RotaryTable table;
  std::vector<LayerCache> layers;
  NormCache norm_out;
  Matrix h_out;
};

void check_tokens(const ModelConfig& config, const std::vector<int>& tokens) {
  if (tokens.empty()) throw EmptySequence("forward needs at least one token");
  for (int t : tokens) {
    if (t < 0 || t >= config.vocab) {
      throw InputError("token " + std::to_string(t) + " outside vocabulary of size " +
                       std::to_string(config.vocab));
    }
  }
}

// Runs the network up to the final normalized hidden state (n x d_model).
Matrix run_trunk(const ModelParams& params, const ModelConfig& config,
                 const std::vector<int>& tokens, const EncodingConfig& encoding,
                 const PositionSchedule& positions, ForwardCache& cache) {
  check_tokens(config, tokens);
  if (encoding.d != config.head_dim) {
    throw InvalidDimension("encoding d must equal the model head_dim");
  }
  if (positions.size() != tokens.size()) {
    throw ShapeError("position schedule length must match token count");
  }
  const auto n = static_cast<Eigen::Index>(tokens.size());
  const int hd = config.head_dim;
  cache.table = make_rotary_table(positions, encoding.basis(), encoding.xpos());
  const RotaryTable& table = cache.table;
  const Matrix* qamp = table.has_xpos() ? &table.query_amp : nullptr;
  const Matrix* kamp = table.has_xpos() ? &table.key_amp : nullptr;

  Matrix x(n, config.d_model);
  for (Eigen::Index j = 0; j < n; ++j) x.row(j) = params.embed.row(tokens[j]);

  cache.layers.resize(params.layers.size());
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const LayerParams& L = params.layers[l];
    LayerCache& c = cache.layers[l];
    c.h_attn = rms_norm(x, L.norm_attn, c.norm_attn);
    c.q_rot.noalias() = c.h_attn * L.wq;
    c.k_rot.noalias() = c.h_attn * L.wk;
    c.v.noalias() = c.h_attn * L.wv;
    c.attn.resize(n, config.d_model);
    c.probs.resize(config.n_heads);
    for (int h = 0; h < config.n_heads; ++h) {
      auto qh = c.q_rot.middleCols(h * hd, hd);
      auto kh = c.k_rot.middleCols(h * hd, hd);
      rotate_inplace(qh, table, qamp);
      rotate_inplace(kh, table, kamp);
      c.probs[h] = softmax_rows(scores_from_rotated(qh, kh, true)).values;
      c.attn.middleCols(h * hd, hd).noalias() = c.probs[h] * c.v.middleCols(h * hd, hd);
    }
    x.noalias() += c.attn * L.wo;

    c.h_ff = rms_norm(x, L.norm_ff, c.norm_ff);
    c.gate_pre.noalias() = c.h_ff * L.w_gate;
    c.up.noalias() = c.h_ff * L.w_up;
    c.gate_act = c.gate_pre.unaryExpr([](double a) { return a * sigmoid(a); });
    c.hidden = c.gate_act.cwiseProduct(c.up);
    x.noalias() += c.hidden * L.w_down;
  }
  cache.h_out = rms_norm(x, params.norm_out, cache.norm_out);
  return cache.h_out;
}

// Row-wise log-sum-exp.
double log_sum_exp(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  const double mx = row.maxCoeff();
  return mx + std::log((row.array() - mx).exp().sum());
}

}  // namespace

Matrix forward_with_positions(const ModelParams& params, const ModelConfig& config,
                              const std::vector<int>& tokens, const EncodingConfig& encoding,
                              const PositionSchedule& positions) {
  ForwardCache cache;
  const Matrix& h = run_trunk(params, config, tokens, encoding, positions, cache);
  return h * params.w_out;
}

Matrix forward(const ModelParams& params, const ModelConfig& config,
               const std::vector<int>& tokens, const EncodingConfig& encoding, Phase phase,
               Rng* position_rng) {
  if (tokens.empty()) throw EmptySequence("forward needs at least one token");
  return forward_with_positions(params, config, tokens, encoding,
                                encoding.positions(tokens.size(), phase, position_rng));
}

double loss(const Matrix& logits, const std::vector<int>& targets) {
  if (static_cast<std::size_t>(logits.rows()) != targets.size()) {
    throw ShapeError("targets must have one entry per logits row");
  }
  double total = 0.0;
  int counted = 0;
  for (Eigen::Index j = 0; j < logits.rows(); ++j) {
    const int t = targets[j];
    if (t == kIgnoreTarget) continue;
    if (t < 0 || t >= logits.cols()) throw InputError("target outside vocabulary");
    total += log_sum_exp(logits.row(j)) - logits(j, t);
    ++counted;
  }
  return counted ? total / counted : 0.0;
}

LossAndGrad backward_with_positions(const ModelParams& params, const ModelConfig& config,
                                    const std::vector<int>& tokens,
                                    const std::vector<int>& targets,
                                    const EncodingConfig& encoding,
                                    const PositionSchedule& positions) {
  if (targets.size() != tokens.size()) throw ShapeError("targets must match tokens in length");
  ForwardCache cache;
  const Matrix& h_out = run_trunk(params, config, tokens, encoding, positions, cache);
  const auto n = static_cast<Eigen::Index>(tokens.size());
  const int hd = config.head_dim;
  const double inv_sqrt_hd = 1.0 / std::sqrt(static_cast<double>(hd));

  LossAndGrad out;
  out.grads = params.zeros_like();
  Gradients& g = out.grads;

  std::vector<Eigen::Index> rows;
  for (Eigen::Index j = 0; j < n; ++j) {
    const int t = targets[j];
    if (t == kIgnoreTarget) continue;
    if (t < 0 || t >= config.vocab) throw InputError("target outside vocabulary");
    rows.push_back(j);
  }
  out.counted = static_cast<int>(rows.size());
  if (rows.empty()) return out;

  // Output projection, only on scored rows.
  Matrix h_sel(static_cast<Eigen::Index>(rows.size()), config.d_model);
  for (std::size_t r = 0; r < rows.size(); ++r) h_sel.row(r) = h_out.row(rows[r]);
  Matrix dlogits = h_sel * params.w_out;
  const double inv_count = 1.0 / static_cast<double>(rows.size());
  double total = 0.0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto row = dlogits.row(r);
    const int t = targets[rows[r]];
    const double lse = log_sum_exp(row);
    total += lse - row(t);
    row = (row.array() - lse).exp();
    row(t) -= 1.0;
    row *= inv_count;
  }
  out.loss = total * inv_count;
  g.w_out.noalias() = h_sel.transpose() * dlogits;
  const Matrix dh_sel = dlogits * params.w_out.transpose();
  Matrix dh_out = Matrix::Zero(n, config.d_model);
  for (std::size_t r = 0; r < rows.size(); ++r) dh_out.row(rows[r]) = dh_sel.row(r);

  Matrix dx = rms_norm_backward(dh_out, params.norm_out, cache.norm_out, g.norm_out);

  const RotaryTable& table = cache.table;
  const Matrix* qamp = table.has_xpos() ? &table.query_amp : nullptr;
  const Matrix* kamp = table.has_xpos() ? &table.key_amp : nullptr;

  for (std::size_t li = params.layers.size(); li-- > 0;) {
    const LayerParams& L = params.layers[li];
    const LayerCache& c = cache.layers[li];
    LayerParams& G = g.layers[li];

    // Feed-forward block: x += (silu(h W_gate) * (h W_up)) W_down.
    G.w_down.noalias() += c.hidden.transpose() * dx;
    const Matrix dhidden = dx * L.w_down.transpose();
    const Matrix dup = dhidden.cwiseProduct(c.gate_act);
    Matrix dgate = dhidden.cwiseProduct(c.up);
    for (Eigen::Index i = 0; i < dgate.size(); ++i) {
      const double a = c.gate_pre.data()[i];
      const double s = sigmoid(a);
      dgate.data()[i] *= s * (1.0 + a * (1.0 - s));
    }
    G.w_gate.noalias() += c.h_ff.transpose() * dgate;
    G.w_up.noalias() += c.h_ff.transpose() * dup;
    Matrix dh_ff = dgate * L.w_gate.transpose();
    dh_ff.noalias() += dup * L.w_up.transpose();
    dx += rms_norm_backward(dh_ff, L.norm_ff, c.norm_ff, G.norm_ff);

    // Attention block: x += attn W_o.
    G.wo.noalias() += c.attn.transpose() * dx;
    const Matrix dattn = dx * L.wo.transpose();
    Matrix dq(n, config.d_model), dk(n, config.d_model), dv(n, config.d_model);
    for (int h = 0; h < config.n_heads; ++h) {
      const Matrix& P = c.probs[h];
      const auto dO = dattn.middleCols(h * hd, hd);
      Matrix dP = dO * c.v.middleCols(h * hd, hd).transpose();
      dv.middleCols(h * hd, hd).noalias() = P.transpose() * dO;
      // Softmax Jacobian; masked entries have P == 0 and stay 0.
      const Vector row_dot = dP.cwiseProduct(P).rowwise().sum();
      Matrix dS = P.cwiseProduct(dP.colwise() - row_dot);
      dS *= inv_sqrt_hd;
      auto dqh = dq.middleCols(h * hd, hd);
      auto dkh = dk.middleCols(h * hd, hd);
      dqh.noalias() = dS * c.k_rot.middleCols(h * hd, hd);
      dkh.noalias() = dS.transpose() * c.q_rot.middleCols(h * hd, hd);
      rotate_transpose_inplace(dqh, table, qamp);
      rotate_transpose_inplace(dkh, table, kamp);
    }
    G.wq.noalias() += c.h_attn.transpose() * dq;
    G.wk.noalias() += c.h_attn.transpose() * dk;
    G.wv.noalias() += c.h_attn.transpose() * dv;
    Matrix dh_attn = dq * L.wq.transpose();
    dh_attn.noalias() += dk * L.wk.transpose();
    dh_attn.noalias() += dv * L.wv.transpose();
    dx += rms_norm_backward(dh_attn, L.norm_attn, c.norm_attn, G.norm_attn);
  }

  for (Eigen::Index j = 0; j < n; ++j) g.embed.row(tokens[j]) += dx.row(j);
  return out;
}

LossAndGrad backward(const ModelParams& params, const ModelConfig& config,
                     const std::vector<int>& tokens, const std::vector<int>& targets,
                     const EncodingConfig& encoding, Phase phase, Rng* position_rng) {
  if (tokens.empty()) throw EmptySequence("backward needs at least one token");
  return backward_with_positions(params, config, tokens, targets, encoding,
                                 encoding.positions(tokens.size(), phase, position_rng));
}

// ---------------------------------------------------------------------------
// Training

std::string TrainReport::to_csv() const {
  std::string out = "step,loss\n";
  for (std::size_t i = 0; i < losses.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_double(losses[i]) + "\n";
  }
  return out;
}

namespace {

struct AdamState {
  std::vector<Matrix> m, v;
};

void axpy(ModelParams& acc, const ModelParams& g, double scale) {
  auto a = acc.tensors();
  auto b = g.tensors();
  for (std::size_t i = 0; i < a.size(); ++i) *a[i].second += scale * *b[i].second;
}

double global_norm(const ModelParams& g) {
  double s = 0.0;
  for (const auto& [name, t] : g.tensors()) s += t->squaredNorm();
  return std::sqrt(s);
}

Rng position_rng_for(const ModelConfig& config, const EncodingConfig& enc, std::uint64_t index) {
  return Rng(Rng::derive(config.seed ^ (enc.seed * 0x9E3779B97F4A7C15ULL), index));
}

}  // namespace

double evaluate_loss(const ModelParams& params, const ModelConfig& config,
                     const ExampleSource& source, std::uint64_t first, int count,
                     const EncodingConfig& encoding) {
  double total = 0.0;
  int used = 0;
  for (int j = 0; j < count; ++j) {
    const TrainExample ex = source(first + static_cast<std::uint64_t>(j));
    Rng prng = position_rng_for(config, encoding, first + j);
    const Matrix logits = forward(params, config, ex.tokens, encoding, Phase::eval, &prng);
    total += loss(logits, ex.targets);
    ++used;
  }
  return used ? total / used : 0.0;
}

TrainResult train(const ModelConfig& config, const ExampleSource& source,
                  const TrainOptions& options, const ModelParams* init,
                  const std::function<void(int, double)>& on_step) {
  config.validate();
  if (options.steps < 0 || options.batch_size < 1) {
    throw InvalidParameter("steps must be >= 0 and batch_size >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  TrainResult result{init ? *init : init_params(config), {}};
  ModelParams& params = result.params;
  TrainReport& report = result.report;
  report.seed = config.seed;
  report.options = options;

  auto tensors = params.tensors();
  AdamState adam;
  for (const auto& [name, t] : tensors) {
    adam.m.push_back(Matrix::Zero(t->rows(), t->cols()));
    adam.v.push_back(Matrix::Zero(t->rows(), t->cols()));
  }

  const double inv_batch = 1.0 / options.batch_size;
  for (int step = 0; step < options.steps; ++step) {
    Gradients grads = params.zeros_like();
    double step_loss = 0.0;
    for (int b = 0; b < options.batch_size; ++b) {
      const std::uint64_t index = static_cast<std::uint64_t>(step) * options.batch_size + b;
      const TrainExample ex = source(index);
      Rng prng = position_rng_for(config, config.encoding, index);
      LossAndGrad lg = backward(params, config, ex.tokens, ex.targets, config.encoding,
                                Phase::train, &prng);
      step_loss += lg.loss * inv_batch;
      axpy(grads, lg.grads, inv_batch);
    }
    if (!std::isfinite(step_loss) || !grads.all_finite()) {
      std::ostringstream os;
      os << "training diverged at step " << (step + 1) << " (loss " << step_loss << ")";
      throw Divergence(os.str());
    }
    report.losses.push_back(step_loss);
    if (on_step) on_step(step + 1, step_loss);

    double clip = 1.0;
    if (options.grad_clip > 0.0) {
      const double norm = global_norm(grads);
      if (norm > options.grad_clip) clip = options.grad_clip / norm;
    }
    double lr = options.lr;
    if (options.warmup_steps > 0 && step < options.warmup_steps) {
      lr *= static_cast<double>(step + 1) / options.warmup_steps;
    }
    const double bc1 = 1.0 - std::pow(options.beta1, step + 1);
    const double bc2 = 1.0 - std::pow(options.beta2, step + 1);
    auto gt = grads.tensors();
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      Matrix& p = *tensors[i].second;
      const Matrix& gi = *gt[i].second;
      Matrix& m = adam.m[i];
      Matrix& v = adam.v[i];
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double gk = gi.data()[k] * clip;
        m.data()[k] = options.beta1 * m.data()[k] + (1.0 - options.beta1) * gk;
        v.data()[k] = options.beta2 * v.data()[k] + (1.0 - options.beta2) * gk * gk;
        const double mhat = m.data()[k] / bc1;
        const double vhat = v.data()[k] / bc2;
        p.data()[k] -= lr * mhat / (std::sqrt(vhat) + options.eps);
      }
    }
  }
  report.steps = options.steps;
  report.final_eval_loss = evaluate_loss(params, config, source, options.eval_offset,
                                         options.eval_examples, config.encoding);
  if (!std::isfinite(report.final_eval_loss)) throw Divergence("final eval loss is not finite");
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

TrainResult continue_training(const ModelConfig& config, const ModelParams& params,
                              const EncodingConfig& new_encoding, const ExampleSource& source,
                              TrainOptions options, int pretrain_steps) {
  ModelConfig next = config;
  next.encoding = new_encoding;
  if (options.steps <= 0) options.steps = std::max(1, pretrain_steps / 4);
  return train(next, source, options, &params);
}

// ---------------------------------------------------------------------------
// Inference

EncodingConfig with_eval_fields(const EncodingConfig& trained,
                                const EncodingConfig& override_with) {
  EncodingConfig e = trained;
  e.scale_eval = override_with.eval_scale();
  e.rand.upper = override_with.rand.upper;
  e.precision = override_with.precision;
  e.seed = override_with.seed;
  return e;
}

std::vector<int> generate(const ModelParams& params, const ModelConfig& config,
                          const std::vector<int>& prompt, int max_new,
                          const EncodingConfig& encoding) {
  std::vector<int> tokens = prompt;
  if (max_new <= 0) return tokens;
  if (prompt.empty()) throw EmptySequence("generation needs a nonempty prompt");
  const EncodingConfig enc = with_eval_fields(config.encoding, encoding);
  for (int i = 0; i < max_new; ++i) {
    const Matrix logits = forward(params, config, tokens, enc, Phase::eval);
    Eigen::Index best = 0;
    logits.row(logits.rows() - 1).maxCoeff(&best);
    tokens.push_back(static_cast<int>(best));
  }
  return tokens;
}

std::vector<double> next_token_logprobs(const ModelParams& params, const ModelConfig& config,
                                        const std::vector<int>& tokens,
                                        const EncodingConfig& encoding) {
  const Matrix logits = forward(params, config, tokens, encoding, Phase::eval);
  std::vector<double> out;
  out.reserve(tokens.size() > 0 ? tokens.size() - 1 : 0);
  for (std::size_t j = 0; j + 1 < tokens.size(); ++j) {
    const auto row = logits.row(static_cast<Eigen::Index>(j));
    out.push_back(row(tokens[j + 1]) - log_sum_exp(row));
  }
  return out;
}

}  // namespace ropelab
