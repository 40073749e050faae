#pragma once

// Deterministic benchmark generators: LongChat-style line retrieval,
// altered-numeric and free-form document QA, and a symbolic key/value
// retrieval task sized for the toy transformer.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/rng.hpp"

namespace ropelab {

enum class Task { longchat_lines, altqa, ffqa, toy_retrieval };
enum class AnswerLocation { start, middle, end, na };
enum class QuestionLocation { start, end, na };

std::string_view to_string(Task t);
std::string_view to_string(AnswerLocation a);
std::string_view to_string(QuestionLocation q);
Task parse_task(std::string_view s);
AnswerLocation parse_answer_location(std::string_view s);
QuestionLocation parse_question_location(std::string_view s);

struct TaskSample {
  std::string id;
  Task task = Task::longchat_lines;
  std::string prompt;
  std::string answer;
  int target_tokens = 1;
  AnswerLocation answer_location = AnswerLocation::na;
  QuestionLocation question_location = QuestionLocation::na;
  int num_lines = 0;
  std::uint64_t seed = 0;
};

struct QARecord {
  std::string document;
  std::string question;
  std::string answer;
};

// Prompt-length measure. Approximate mode charges ceil(chars / chars_per_token);
// external mode looks texts up in counts loaded from a sidecar file produced
// by a real tokenizer.
class TokenBudgeter {
 public:
  enum class Mode { approximate, external };

  TokenBudgeter() = default;
  explicit TokenBudgeter(double chars_per_token);

  // Sidecar: JSON Lines of {"text": "...", "tokens": N}.
  static TokenBudgeter load_external(const std::string& path);
  static TokenBudgeter from_external_counts(std::map<std::string, int> counts);

  Mode mode() const { return mode_; }
  double chars_per_token() const { return chars_per_token_; }

  int count(std::string_view text) const;
  // Characters expected to cost `tokens` tokens (approximate mode ratio; the
  // external mode uses the ratio fitted over its sidecar entries).
  double chars_for(double tokens) const;

 private:
  Mode mode_ = Mode::approximate;
  double chars_per_token_ = 4.0;
  std::shared_ptr<const std::map<std::string, int>> counts_;
};

// ----- LongChat-Lines --------------------------------------------------------

const std::vector<std::string_view>& adjective_list();
const std::vector<std::string_view>& noun_list();
std::size_t line_key_capacity();

struct ParsedLine {
  std::string key;
  long value = 0;
};

// Parses `line <adj>-<noun>: REGISTER_CONTENT is <NNNNN>`; nullopt otherwise.
std::optional<ParsedLine> parse_register_line(std::string_view line);

TaskSample gen_longchat_lines(int num_lines, Rng& rng);
TaskSample gen_longchat_lines(int num_lines, std::uint64_t seed);

// Smallest line count whose prompt measures >= target_tokens (at least 1),
// using per-line and fixed costs calibrated on sampled generations.
int lines_for_budget(int target_tokens, const TokenBudgeter& budgeter);

// ----- WikiQA variants -------------------------------------------------------

// Draws integers uniformly from a closed range; injectable for tests.
using IntDraw = std::function<std::int64_t(std::int64_t lo, std::int64_t hi)>;

// Years in [1000, 2100] move by a nonzero offset in [-10, 10] and stay in that
// range; any other value becomes a different number with the same digit count
// and no leading zero.
std::string mutate_numeric_answer(std::string_view answer, Rng& rng);
std::string mutate_numeric_answer(std::string_view answer, const IntDraw& draw);

// Occurrences of `needle` not embedded in a longer digit run (for numeric
// needles), as byte offsets.
std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle);
std::string replace_occurrences(std::string_view haystack, std::string_view needle,
                                std::string_view replacement);

struct Placement {
  AnswerLocation answer = AnswerLocation::middle;
  QuestionLocation question = QuestionLocation::end;
};

// Relative byte position of the first answer occurrence in the document part
// of a prompt, in [0, 1).
bool placement_satisfied(AnswerLocation where, double relative_position);

// `filler` supplies neighbouring text used to pad short documents.
TaskSample build_altqa_sample(const QARecord& record, Placement placement, int target_tokens,
                              const TokenBudgeter& budgeter, Rng& rng,
                              std::span<const std::string> filler = {});
TaskSample build_ffqa_sample(const QARecord& record, Placement placement, int target_tokens,
                             const TokenBudgeter& budgeter, Rng& rng,
                             std::span<const std::string> filler = {});

// Pieces of an assembled QA prompt, for verification.
struct QAPromptParts {
  std::string document;
  std::string question;
};
std::optional<QAPromptParts> split_qa_prompt(std::string_view prompt);

// ----- Toy retrieval ---------------------------------------------------------

struct ToyVocab {
  int num_keys = 128;
  int num_values = 16;

  static constexpr int kPad = 0;
  static constexpr int kQuery = 1;
  int key_token(int k) const { return 2 + k; }
  int value_token(int v) const { return 2 + num_keys + v; }
  bool is_key(int t) const { return t >= 2 && t < 2 + num_keys; }
  bool is_value(int t) const { return t >= 2 + num_keys && t < size(); }
  int size() const { return 2 + num_keys + num_values; }
};

// Sequence `k1 v1 k2 v2 ... kn vn Q k v`: unique keys, then a query marker,
// a queried key and its value. The answer span is the final token.
struct ToyRetrieval {
  std::vector<int> tokens;
  std::size_t answer_begin = 0;
  std::size_t answer_end = 0;

  std::vector<int> prompt() const {
    return {tokens.begin(), tokens.begin() + static_cast<long>(answer_begin)};
  }
  int answer() const { return tokens[answer_begin]; }
};

ToyRetrieval gen_toy_retrieval(int num_pairs, const ToyVocab& vocab, Rng& rng);

// Largest pair count whose full sequence fits in `length` tokens; the second
// form also respects the key alphabet.
int toy_pairs_for_length(int length);
int toy_pairs_for_length(int length, const ToyVocab& vocab);

// ----- Datasets ----------------------------------------------------------------

struct GenOptions {
  Task task = Task::longchat_lines;
  int count = 0;                       // samples per length and placement
  std::vector<int> lengths;            // target token counts
  std::vector<AnswerLocation> answer_locations{AnswerLocation::middle};
  std::vector<QuestionLocation> question_locations{QuestionLocation::end};
  std::uint64_t seed = 0;
  TokenBudgeter budgeter;
  ToyVocab toy_vocab;
};

// Sample k gets seed = base seed + k; output order is stable.
std::vector<TaskSample> generate_dataset(const GenOptions& options,
                                         std::span<const QARecord> corpus = {});

// Toy samples carry their token ids as a space-separated prompt/answer.
std::vector<int> parse_token_text(std::string_view text);
std::string token_text(std::span<const int> tokens);

}  // namespace ropelab
