#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ropelab/error.hpp"

namespace {

using namespace ropelab::cli;

void add_encoding_flags(CLI::App* app, EncodingFlags& f) {
  app->add_option("--scheme", f.scheme, "rope, power, truncated, randomized or xpos");
  app->add_option("--scale", f.scale, "training position scale");
  app->add_option("--eval-scale", f.eval_scale, "evaluation position scale");
  app->add_option("--power-k", f.power_k, "power basis exponent");
  app->add_option("--trunc-a", f.trunc_a, "truncated basis lower cutoff");
  app->add_option("--trunc-b", f.trunc_b, "truncated basis upper cutoff");
  app->add_option("--trunc-rho", f.trunc_rho, "truncated basis fill frequency");
  app->add_option("--epsilon", f.epsilon, "randomized positions minimum gap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ropelab: rotary encoding experiments, long-context task generation and scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ROPELAB_VERSION);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a task dataset (JSON Lines)");
  g->add_option("--task", gen.task, "longchat-lines, altqa, ffqa or toy-retrieval");
  g->add_option("--count", gen.count, "samples per length and placement");
  g->add_option("--lengths", gen.lengths, "target token counts")->delimiter(',');
  g->add_option("--answer-loc", gen.answer_locs, "start, middle, end (QA tasks)")->delimiter(',');
  g->add_option("--question-loc", gen.question_locs, "start, end (QA tasks)")->delimiter(',');
  g->add_option("--seed", gen.seed, "base seed; sample k uses seed + k");
  g->add_option("--out", gen.out, "dataset path")->required();
  g->add_option("--corpus", gen.corpus, "QA source records (JSON Lines)");
  g->add_option("--token-counts", gen.token_counts, "external token-count sidecar");
  g->add_option("--chars-per-token", gen.chars_per_token, "approximate budgeter ratio");
  g->add_option("--num-keys", gen.num_keys, "toy-retrieval key alphabet");
  g->add_option("--num-values", gen.num_values, "toy-retrieval value alphabet");

  ToyTrainArgs train;
  auto* t = app.add_subcommand("toy-train", "train the toy transformer on toy retrieval");
  t->add_option("--config", train.config, "run configuration (key = value)");
  t->add_option("--out", train.out, "checkpoint path")->required();
  t->add_option("--seed", train.seed, "model and data seed");
  t->add_option("--steps", train.steps, "optimizer steps");
  t->add_flag("--quiet", train.quiet, "no progress lines");
  add_encoding_flags(t, train.encoding);

  ToyEvalArgs eval;
  auto* e = app.add_subcommand("toy-eval", "greedy-decode a toy dataset and score it");
  e->add_option("--checkpoint", eval.checkpoint, "checkpoint path")->required();
  e->add_option("--dataset", eval.dataset, "toy-retrieval dataset")->required();
  e->add_option("--out", eval.out, "outputs path (JSON Lines)")->required();
  e->add_option("--eval-scale", eval.eval_scale, "evaluation position scale");
  e->add_option("--format", eval.format, "csv, markdown or both");

  ScoreArgs score;
  auto* s = app.add_subcommand("score", "score outputs against a dataset");
  s->add_option("--dataset", score.dataset, "dataset path")->required();
  s->add_option("--outputs", score.outputs, "outputs path")->required();
  s->add_option("--out", score.out, "report path prefix")->required();
  s->add_option("--buckets", score.buckets, "context-length buckets")->delimiter(',');
  s->add_flag("--exact-buckets", score.exact_buckets, "bucket by exact target_tokens");
  s->add_option("--format", score.format, "csv, markdown or both");

  PplArgs ppl;
  auto* p = app.add_subcommand("ppl", "windowed perplexity of a token document");
  p->add_option("--checkpoint", ppl.checkpoint, "toy model checkpoint");
  p->add_option("--provider", ppl.provider, "log-probability provider command");
  p->add_option("--document", ppl.document, "whitespace-separated token ids")->required();
  p->add_option("--lengths", ppl.lengths, "context sizes N")->delimiter(',');
  p->add_option("--eval-len", ppl.eval_len, "scored tokens per window");
  p->add_option("--eval-scale", ppl.eval_scale, "evaluation position scale");
  p->add_option("--out", ppl.out, "table path prefix")->required();
  p->add_option("--format", ppl.format, "csv, markdown or both");

  BasisPlotArgs plot;
  auto* b = app.add_subcommand("basis-plot", "frequency-vs-dimension CSV and SVG");
  b->add_option("--config", plot.configs, "encoding configuration files");
  b->add_option("--schemes", plot.schemes, "schemes to plot when no config is given")
      ->delimiter(',');
  b->add_option("--d", plot.d, "head dimension");
  b->add_option("--base", plot.base, "rotary base");
  b->add_option("--out", plot.out, "output path prefix")->required();
  add_encoding_flags(b, plot.encoding);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*g) cmd_gen(gen);
    if (*t) cmd_toy_train(train);
    if (*e) cmd_toy_eval(eval);
    if (*s) cmd_score(score);
    if (*p) cmd_ppl(ppl);
    if (*b) cmd_basis_plot(plot);
  } catch (const ropelab::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return ropelab::exit_code(err.error_class());
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
