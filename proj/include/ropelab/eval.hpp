#pragma once

// Scoring of model outputs against generated samples, windowed perplexity,
// and table rendering.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/records.hpp"
#include "ropelab/taskgen.hpp"

namespace ropelab {

// Trim, ASCII case-fold, and strip surrounding punctuation (including angle
// brackets) and whitespace.
std::string normalize_answer(std::string_view text);

// True when the normalized gold answer occurs in the output. Numeric answers
// must match a whole digit run of the output with the same integer value;
// other answers must not be glued to adjacent letters or digits.
bool score_sample(const TaskSample& sample, const OutputRecord& output);

struct EvalRow {
  int bucket = 0;  // context-length bucket (token count)
  AnswerLocation answer_location = AnswerLocation::na;
  QuestionLocation question_location = QuestionLocation::na;
  int n = 0;
  int correct = 0;
  double accuracy() const { return n ? static_cast<double>(correct) / n : 0.0; }
};

struct EvalReport {
  std::string task;  // shared task label, "mixed" or empty
  std::vector<EvalRow> rows;  // sorted by (bucket, answer, question)
  int n = 0;
  int correct = 0;
  double accuracy() const { return n ? static_cast<double>(correct) / n : 0.0; }
};

// LongChat-Lines context lengths used for the default bucketing.
const std::vector<int>& default_buckets();

// A sample falls in the smallest bucket >= its target_tokens; beyond the last
// bucket (or with an empty bucket list) it keeps its own target_tokens.
int bucket_for(int target_tokens, std::span<const int> buckets);

// Samples without an output count as wrong. Outputs naming unknown ids, and
// duplicate ids on either side, raise PairingError.
EvalReport aggregate(std::span<const TaskSample> samples, std::span<const OutputRecord> outputs,
                     std::span<const int> buckets = default_buckets());

enum class TableFormat { csv, markdown };
TableFormat parse_table_format(std::string_view s);

std::string render_tables(const EvalReport& report, TableFormat format);

// Per-position log-probabilities of the observed next tokens: input n tokens,
// output n - 1 values.
using LogProbProvider = std::function<std::vector<double>(const std::vector<int>& tokens)>;

struct PerplexityResult {
  double perplexity = 0.0;
  double mean_nll = 0.0;
  int windows = 0;
  int context = 0;   // window size N
  int eval_len = 0;  // scored tokens per window
};

// Windows are the non-overlapping N-token spans [kN, (k+1)N) of the document.
// In each, the last eval_len tokens are scored given the first N - eval_len.
PerplexityResult perplexity(const LogProbProvider& provider, std::span<const int> document,
                            int context, int eval_len = 256);

struct Window {
  std::size_t begin = 0;  // first token of the window
  std::size_t scored_begin = 0;  // first scored token
  std::size_t end = 0;
};
std::vector<Window> perplexity_windows(std::size_t document_length, int context, int eval_len);

// Provider backed by a child process: one JSON array of token ids per request
// line on its stdin, one JSON array of log-probabilities per response line.
LogProbProvider subprocess_provider(const std::string& command);

}  // namespace ropelab
