#pragma once

// Subcommands of the ropelab binary. Each writes a run manifest next to its
// primary output before producing any artifact.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ropelab/config.hpp"

namespace ropelab::cli {

// Encoding overrides shared by several subcommands; flags win over files.
struct EncodingFlags {
  std::optional<std::string> scheme;
  std::optional<double> scale;
  std::optional<double> eval_scale;
  std::optional<double> power_k;
  std::optional<double> trunc_a, trunc_b, trunc_rho;
  std::optional<double> epsilon;

  void apply(KeyValues& kv) const;
};

struct GenArgs {
  std::string task = "longchat-lines";
  int count = 0;
  std::vector<int> lengths;
  std::vector<std::string> answer_locs{"middle"};
  std::vector<std::string> question_locs{"end"};
  std::uint64_t seed = 0;
  std::string out;
  std::string corpus;        // QA source records (altqa, ffqa)
  std::string token_counts;  // external budgeter sidecar
  double chars_per_token = 4.0;
  int num_keys = 128;
  int num_values = 16;
};

struct ToyTrainArgs {
  std::string config;
  std::string out;  // checkpoint path
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  EncodingFlags encoding;
  bool quiet = false;
};

struct ToyEvalArgs {
  std::string checkpoint;
  std::string dataset;
  std::string out;  // outputs JSON Lines
  std::optional<double> eval_scale;
  std::string format = "both";
};

struct ScoreArgs {
  std::string dataset;
  std::string outputs;
  std::string out;  // report prefix
  std::vector<int> buckets;  // empty: the default LongChat-Lines lengths
  bool exact_buckets = false;
  std::string format = "both";
};

struct PplArgs {
  std::string checkpoint;
  std::string provider;  // shell command speaking the JSON-line protocol
  std::string document;  // whitespace-separated token ids
  std::vector<int> lengths;
  int eval_len = 256;
  std::optional<double> eval_scale;
  std::string out;  // table prefix
  std::string format = "both";
};

struct BasisPlotArgs {
  std::vector<std::string> configs;
  std::vector<std::string> schemes{"rope", "power", "truncated"};
  int d = 128;
  std::optional<double> base;
  EncodingFlags encoding;
  std::string out;  // prefix for .csv and .svg
};

void cmd_gen(const GenArgs& args);
void cmd_toy_train(const ToyTrainArgs& args);
void cmd_toy_eval(const ToyEvalArgs& args);
void cmd_score(const ScoreArgs& args);
void cmd_ppl(const PplArgs& args);
void cmd_basis_plot(const BasisPlotArgs& args);

// Paths derived from a primary output path.
std::string manifest_path(const std::string& out);

// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace ropelab::cli
