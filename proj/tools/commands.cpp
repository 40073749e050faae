#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ropelab/error.hpp"
#include "ropelab/eval.hpp"
#include "ropelab/records.hpp"
#include "ropelab/taskgen.hpp"
#include "ropelab/toy.hpp"

#ifndef ROPELAB_VERSION
#define ROPELAB_VERSION "0.0.0"
#endif

namespace ropelab::cli {

namespace {

using ojson = nlohmann::ordered_json;
using Pairs = std::vector<std::pair<std::string, std::string>>;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& out, std::string_view subcommand, const Pairs& config,
                    std::uint64_t seed, const std::vector<std::string>& artifacts) {
  ojson j;
  j["schema"] = "ropelab.manifest.v1";
  j["subcommand"] = subcommand;
  ojson cfg = ojson::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["seed"] = seed;
  j["artifacts"] = artifacts;
  j["tool_version"] = ROPELAB_VERSION;
  j["timestamp"] = utc_timestamp();
  write_text_file(manifest_path(out), j.dump(2) + "\n");
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

void require_out(const std::string& out) {
  if (out.empty()) throw InvalidParameter("--out is required");
}

struct TableTargets {
  bool csv = false, markdown = false;
};

TableTargets table_targets(const std::string& format) {
  if (format == "both") return {true, true};
  return parse_table_format(format) == TableFormat::csv ? TableTargets{true, false}
                                                        : TableTargets{false, true};
}

std::vector<std::string> table_paths(const std::string& prefix, TableTargets t) {
  std::vector<std::string> out;
  if (t.csv) out.push_back(prefix + ".csv");
  if (t.markdown) out.push_back(prefix + ".md");
  return out;
}

void write_report(const EvalReport& report, const std::string& prefix, TableTargets t) {
  if (t.csv) write_text_file(prefix + ".csv", render_tables(report, TableFormat::csv));
  if (t.markdown) write_text_file(prefix + ".md", render_tables(report, TableFormat::markdown));
}

void add_encoding_pairs(Pairs& out, const EncodingConfig& e) { e.write_key_values(out); }

}  // namespace

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

std::string file_digest(const std::string& path) {
  const std::string bytes = read_text_file(path);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void EncodingFlags::apply(KeyValues& kv) const {
  if (scheme) kv.set("scheme", *scheme);
  if (scale) kv.set("scale_train", format_double(*scale));
  if (eval_scale) kv.set("scale_eval", format_double(*eval_scale));
  if (power_k) kv.set("power_k", format_double(*power_k));
  if (trunc_a) kv.set("trunc_a", format_double(*trunc_a));
  if (trunc_b) kv.set("trunc_b", format_double(*trunc_b));
  if (trunc_rho) kv.set("trunc_rho", format_double(*trunc_rho));
  if (epsilon) kv.set("rand_epsilon", format_double(*epsilon));
}

// ---------------------------------------------------------------------------

void cmd_gen(const GenArgs& args) {
  require_out(args.out);
  GenOptions opt;
  opt.task = parse_task(args.task);
  opt.count = args.count;
  opt.lengths = args.lengths;
  opt.seed = args.seed;
  if (opt.count < 0) throw InvalidParameter("--count must be >= 0");
  if (opt.lengths.empty() && opt.count > 0) throw InvalidParameter("--lengths is required");
  opt.answer_locations.clear();
  for (const auto& a : args.answer_locs) opt.answer_locations.push_back(parse_answer_location(a));
  opt.question_locations.clear();
  for (const auto& q : args.question_locs) {
    opt.question_locations.push_back(parse_question_location(q));
  }
  opt.budgeter = args.token_counts.empty() ? TokenBudgeter(args.chars_per_token)
                                           : TokenBudgeter::load_external(args.token_counts);
  opt.toy_vocab = ToyVocab{args.num_keys, args.num_values};

  std::vector<QARecord> corpus;
  const bool qa = opt.task == Task::altqa || opt.task == Task::ffqa;
  if (qa) {
    if (args.corpus.empty()) throw InvalidParameter("--corpus is required for QA tasks");
    corpus = read_qa_records(args.corpus);
  }

  const Pairs config = {
      {"task", std::string(to_string(opt.task))},
      {"count", std::to_string(opt.count)},
      {"lengths", join_ints(opt.lengths)},
      {"answer_loc", join(args.answer_locs)},
      {"question_loc", join(args.question_locs)},
      {"corpus", args.corpus},
      {"corpus_digest", args.corpus.empty() ? "" : file_digest(args.corpus)},
      {"token_counts", args.token_counts},
      {"chars_per_token", format_double(args.chars_per_token)},
      {"num_keys", std::to_string(args.num_keys)},
      {"num_values", std::to_string(args.num_values)},
  };
  write_manifest(args.out, "gen", config, args.seed, {args.out});
  const auto samples = generate_dataset(opt, corpus);
  write_text_file(args.out, jsonl_text(samples));
  std::cerr << "gen: wrote " << samples.size() << " samples to " << args.out << "\n";
}

// ---------------------------------------------------------------------------

void cmd_toy_train(const ToyTrainArgs& args) {
  require_out(args.out);
  KeyValues kv = args.config.empty() ? KeyValues() : KeyValues::load(args.config);
  args.encoding.apply(kv);
  if (args.seed) {
    kv.set("model_seed", std::to_string(*args.seed));
    kv.set("data_seed", std::to_string(*args.seed * 1000 + 7));
  }
  if (args.steps) kv.set("steps", std::to_string(*args.steps));
  ToyRunConfig run = ToyRunConfig::from_key_values(kv);
  kv.expect_consumed();
  run.validate();

  const std::string csv_path = args.out + ".train.csv";
  const std::string summary_path = args.out + ".summary.json";
  write_manifest(args.out, "toy-train", run.key_values(), run.model.seed,
                 {args.out, csv_path, summary_path});

  const ExampleSource source =
      toy_example_source(run.task, run.model.train_ctx, run.train.batch_size);
  const bool quiet = args.quiet;
  const TrainResult res =
      train(run.model, source, run.train, nullptr, [quiet](int step, double loss) {
        if (!quiet && (step % 100 == 0 || step == 1)) {
          std::cerr << "step " << step << " loss " << loss << "\n";
        }
      });
  const double acc = toy_accuracy(res.params, run.model, run.model.encoding, run.task.vocab,
                                  run.model.train_ctx, run.eval_samples, run.eval_seed);

  save_checkpoint(args.out, run.model, res.params);
  write_text_file(csv_path, res.report.to_csv());
  ojson summary;
  summary["schema"] = "ropelab.train_summary.v1";
  summary["steps"] = res.report.steps;
  summary["final_train_loss"] = res.report.losses.empty() ? 0.0 : res.report.losses.back();
  summary["final_eval_loss"] = res.report.final_eval_loss;
  summary["train_ctx"] = run.model.train_ctx;
  summary["eval_samples"] = run.eval_samples;
  summary["eval_seed"] = run.eval_seed;
  summary["train_accuracy"] = acc;
  write_text_file(summary_path, summary.dump(2) + "\n");
  std::cerr << "toy-train: " << res.report.steps << " steps in " << res.report.wall_seconds
            << " s, eval loss " << res.report.final_eval_loss << ", accuracy at "
            << run.model.train_ctx << " tokens " << acc << "\n";
}

// ---------------------------------------------------------------------------

void cmd_toy_eval(const ToyEvalArgs& args) {
  require_out(args.out);
  const auto [config, params] = load_checkpoint(args.checkpoint);
  const auto samples = read_task_samples(args.dataset);
  EncodingConfig enc = config.encoding;
  if (args.eval_scale) enc.scale_eval = *args.eval_scale;
  enc.validate();
  const TableTargets targets = table_targets(args.format);

  Pairs cfg = config.key_values();
  cfg.emplace_back("checkpoint", args.checkpoint);
  cfg.emplace_back("checkpoint_digest", file_digest(args.checkpoint));
  cfg.emplace_back("dataset", args.dataset);
  cfg.emplace_back("dataset_digest", file_digest(args.dataset));
  cfg.emplace_back("eval_scale", format_double(enc.eval_scale()));
  std::vector<std::string> artifacts{args.out};
  for (const auto& p : table_paths(args.out + ".report", targets)) artifacts.push_back(p);
  write_manifest(args.out, "toy-eval", cfg, config.seed, artifacts);

  std::vector<OutputRecord> outputs;
  outputs.reserve(samples.size());
  for (const TaskSample& s : samples) {
    if (s.task != Task::toy_retrieval) {
      throw InputError("toy-eval needs toy-retrieval samples; `" + s.id + "` is " +
                       std::string(to_string(s.task)));
    }
    const std::vector<int> prompt = parse_token_text(s.prompt);
    for (int t : prompt) {
      if (t < 0 || t >= config.vocab) {
        throw InputError("sample `" + s.id + "` has token " + std::to_string(t) +
                         " outside the model vocabulary");
      }
    }
    const auto answer_len = static_cast<int>(parse_token_text(s.answer).size());
    const std::vector<int> full = generate(params, config, prompt, answer_len, enc);
    outputs.push_back(OutputRecord{
        s.id, token_text(std::span<const int>(full).subspan(prompt.size()))});
  }
  write_text_file(args.out, jsonl_text(outputs));
  const EvalReport report = aggregate(samples, outputs, {});
  write_report(report, args.out + ".report", targets);
  std::cerr << "toy-eval: accuracy " << report.accuracy() << " over " << report.n
            << " samples (eval_scale " << enc.eval_scale() << ")\n";
}

// ---------------------------------------------------------------------------

void cmd_score(const ScoreArgs& args) {
  require_out(args.out);
  const TableTargets targets = table_targets(args.format);
  const std::vector<int> buckets =
      args.exact_buckets ? std::vector<int>{}
                         : (args.buckets.empty() ? default_buckets() : args.buckets);
  const Pairs cfg = {
      {"dataset", args.dataset},
      {"dataset_digest", file_digest(args.dataset)},
      {"outputs", args.outputs},
      {"outputs_digest", file_digest(args.outputs)},
      {"buckets", args.exact_buckets ? "exact" : join_ints(buckets)},
  };
  write_manifest(args.out, "score", cfg, 0, table_paths(args.out, targets));
  const auto samples = read_task_samples(args.dataset);
  const auto outputs = read_output_records(args.outputs);
  const EvalReport report = aggregate(samples, outputs, buckets);
  write_report(report, args.out, targets);
  std::cerr << "score: accuracy " << report.accuracy() << " over " << report.n << " samples\n";
}

// ---------------------------------------------------------------------------

void cmd_ppl(const PplArgs& args) {
  require_out(args.out);
  if (args.checkpoint.empty() == args.provider.empty()) {
    throw InvalidParameter("give exactly one of --checkpoint and --provider");
  }
  if (args.lengths.empty()) throw InvalidParameter("--lengths is required");
  const TableTargets targets = table_targets(args.format);
  std::vector<int> document;
  {
    std::istringstream in(read_text_file(args.document));
    std::string word;
    while (in >> word) {
      const auto toks = parse_token_text(word);
      document.insert(document.end(), toks.begin(), toks.end());
    }
  }

  Pairs cfg;
  std::optional<std::pair<ModelConfig, ModelParams>> model;
  LogProbProvider provider;
  if (!args.checkpoint.empty()) {
    model = load_checkpoint(args.checkpoint);
    for (int t : document) {
      if (t < 0 || t >= model->first.vocab) {
        throw InputError("document token " + std::to_string(t) + " is outside the vocabulary");
      }
    }
    EncodingConfig enc = model->first.encoding;
    if (args.eval_scale) enc.scale_eval = *args.eval_scale;
    enc.validate();
    cfg = model->first.key_values();
    cfg.emplace_back("checkpoint", args.checkpoint);
    cfg.emplace_back("checkpoint_digest", file_digest(args.checkpoint));
    cfg.emplace_back("eval_scale", format_double(enc.eval_scale()));
    provider = model_logprob_provider(model->second, model->first, enc);
  } else {
    cfg.emplace_back("provider", args.provider);
  }
  cfg.emplace_back("document", args.document);
  cfg.emplace_back("document_digest", file_digest(args.document));
  cfg.emplace_back("lengths", join_ints(args.lengths));
  cfg.emplace_back("eval_len", std::to_string(args.eval_len));
  write_manifest(args.out, "ppl", cfg, model ? model->first.seed : 0,
                 table_paths(args.out, targets));
  // Validate every length before starting a possibly slow provider.
  for (int n : args.lengths) perplexity_windows(document.size(), n, args.eval_len);
  if (!model) provider = subprocess_provider(args.provider);

  std::string csv = "context,eval_len,windows,mean_nll,perplexity\n";
  std::string md = "| context | eval len | windows | mean NLL | perplexity |\n|---:|---:|---:|---:|---:|\n";
  for (int n : args.lengths) {
    const PerplexityResult r = perplexity(provider, document, n, args.eval_len);
    csv += std::to_string(n) + "," + std::to_string(r.eval_len) + "," +
           std::to_string(r.windows) + "," + format_double(r.mean_nll) + "," +
           format_double(r.perplexity) + "\n";
    md += "| " + std::to_string(n) + " | " + std::to_string(r.eval_len) + " | " +
          std::to_string(r.windows) + " | " + format_double(r.mean_nll) + " | " +
          format_double(r.perplexity) + " |\n";
    std::cerr << "ppl: N=" << n << " perplexity " << r.perplexity << "\n";
  }
  if (targets.csv) write_text_file(args.out + ".csv", csv);
  if (targets.markdown) write_text_file(args.out + ".md", md);
}

// ---------------------------------------------------------------------------

namespace {

struct Curve {
  std::string label;
  std::vector<double> freqs;
};

std::string svg_plot(const std::vector<Curve>& curves) {
  constexpr double W = 720, H = 440, L = 70, R = 170, T = 30, B = 50;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::size_t n_max = 1;
  double lo = 1.0, hi = 1e-300;
  for (const auto& c : curves) {
    n_max = std::max(n_max, c.freqs.size());
    for (double f : c.freqs) {
      if (f > 0) {
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
    }
  }
  if (hi < lo) hi = lo = 1.0;
  const double y_hi = std::ceil(std::log10(hi));
  const double y_lo = std::floor(std::log10(lo)) - 1.0;  // zeros sit on this floor
  auto px = [&](std::size_t i) {
    return L + (W - L - R) * (n_max > 1 ? static_cast<double>(i) / (n_max - 1) : 0.5);
  };
  auto py = [&](double f) {
    const double v = f > 0 ? std::log10(f) : y_lo;
    return T + (H - T - B) * (y_hi - v) / (y_hi - y_lo);
  };
  char buf[1024];
  std::string s;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                L, T, W - L - R, H - T - B);
  s += buf;
  for (double e = y_lo; e <= y_hi + 1e-9; e += 1.0) {
    const double y = py(std::pow(10.0, e));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n",
                  L, y, W - R, y, L - 6, y + 4,
                  e == y_lo ? "0" : ("1e" + std::to_string(static_cast<int>(e))).c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">dimension pair i</text>\n"
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"start\">1</text>\n"
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%zu</text>\n"
                "<text x=\"14\" y=\"%.1f\" transform=\"rotate(-90 14 %.1f)\" "
                "text-anchor=\"middle\">frequency (log scale)</text>\n",
                (L + W - R) / 2, H - 12, L, H - B + 16, W - R, H - B + 16, n_max,
                (T + H - B) / 2, (T + H - B) / 2);
  s += buf;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = colors[c % 8];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curves[c].freqs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(i), py(curves[c].freqs[i]));
      s += buf;
    }
    s += "\"/>\n";
    const double ly = T + 14 + 18.0 * c;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                  "stroke-width=\"2\"/>\n<text x=\"%.1f\" y=\"%.1f\">",
                  W - R + 12, ly, W - R + 32, ly, color, W - R + 38, ly + 4);
    s += buf;
    for (char ch : curves[c].label) {
      if (ch == '<') s += "&lt;";
      else if (ch == '>') s += "&gt;";
      else if (ch == '&') s += "&amp;";
      else s += ch;
    }
    s += "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

void cmd_basis_plot(const BasisPlotArgs& args) {
  require_out(args.out);
  std::vector<std::pair<std::string, EncodingConfig>> encodings;
  if (!args.configs.empty()) {
    for (const auto& path : args.configs) {
      KeyValues kv = KeyValues::load(path);
      args.encoding.apply(kv);
      EncodingConfig e = EncodingConfig::from_key_values(kv);
      kv.expect_consumed();
      e.validate();
      encodings.emplace_back(std::filesystem::path(path).stem().string(), e);
    }
  } else {
    for (const auto& scheme : args.schemes) {
      KeyValues kv;
      kv.set("scheme", scheme);
      kv.set("d", std::to_string(args.d));
      if (args.base) kv.set("base", format_double(*args.base));
      EncodingFlags flags = args.encoding;
      flags.scheme.reset();
      flags.apply(kv);
      EncodingConfig e = EncodingConfig::from_key_values(kv);
      kv.expect_consumed();
      e.validate();
      encodings.emplace_back(std::string(to_string(e.scheme)), e);
    }
  }
  if (encodings.empty()) throw InvalidParameter("basis-plot needs --config files or --schemes");

  Pairs cfg;
  for (std::size_t i = 0; i < encodings.size(); ++i) {
    Pairs one;
    add_encoding_pairs(one, encodings[i].second);
    for (const auto& [k, v] : one) cfg.emplace_back(encodings[i].first + "." + k, v);
  }
  write_manifest(args.out, "basis-plot", cfg, 0, {args.out + ".csv", args.out + ".svg"});

  std::vector<Curve> curves;
  std::string csv = "label,scheme,i,theta\n";
  for (const auto& [label, e] : encodings) {
    const FrequencyBasis b = e.basis();
    curves.push_back(Curve{label, b.freqs});
    for (std::size_t i = 0; i < b.freqs.size(); ++i) {
      csv += label + "," + std::string(to_string(e.scheme)) + "," + std::to_string(i + 1) + "," +
             format_double(b.freqs[i]) + "\n";
    }
  }
  write_text_file(args.out + ".csv", csv);
  write_text_file(args.out + ".svg", svg_plot(curves));
}

}  // namespace ropelab::cli
