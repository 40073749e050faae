#include "ropelab/taskgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ropelab/error.hpp"

namespace ropelab {

// ---------------------------------------------------------------------------
// Labels

std::string_view to_string(Task t) {
  switch (t) {
    case Task::longchat_lines: return "longchat-lines";
    case Task::altqa: return "altqa";
    case Task::ffqa: return "ffqa";
    case Task::toy_retrieval: return "toy-retrieval";
  }
  return "?";
}

std::string_view to_string(AnswerLocation a) {
  switch (a) {
    case AnswerLocation::start: return "start";
    case AnswerLocation::middle: return "middle";
    case AnswerLocation::end: return "end";
    case AnswerLocation::na: return "n/a";
  }
  return "?";
}

std::string_view to_string(QuestionLocation q) {
  switch (q) {
    case QuestionLocation::start: return "start";
    case QuestionLocation::end: return "end";
    case QuestionLocation::na: return "n/a";
  }
  return "?";
}

Task parse_task(std::string_view s) {
  if (s == "longchat-lines" || s == "lines") return Task::longchat_lines;
  if (s == "altqa") return Task::altqa;
  if (s == "ffqa") return Task::ffqa;
  if (s == "toy-retrieval" || s == "toy") return Task::toy_retrieval;
  throw InvalidParameter("unknown task: " + std::string(s));
}

AnswerLocation parse_answer_location(std::string_view s) {
  if (s == "start") return AnswerLocation::start;
  if (s == "middle") return AnswerLocation::middle;
  if (s == "end") return AnswerLocation::end;
  if (s == "n/a") return AnswerLocation::na;
  throw InvalidParameter("answer location must be start, middle or end: " + std::string(s));
}

QuestionLocation parse_question_location(std::string_view s) {
  if (s == "start") return QuestionLocation::start;
  if (s == "end") return QuestionLocation::end;
  if (s == "n/a") return QuestionLocation::na;
  throw InvalidParameter("question location must be start or end: " + std::string(s));
}

// ---------------------------------------------------------------------------
// Token budgeting

TokenBudgeter::TokenBudgeter(double chars_per_token) : chars_per_token_(chars_per_token) {
  if (!(chars_per_token > 0.0)) throw InvalidParameter("chars_per_token must be > 0");
}

TokenBudgeter TokenBudgeter::from_external_counts(std::map<std::string, int> counts) {
  TokenBudgeter b;
  b.mode_ = Mode::external;
  double chars = 0.0, tokens = 0.0;
  for (const auto& [text, n] : counts) {
    if (n < 0) throw InputError("external token counts must be nonnegative");
    chars += static_cast<double>(text.size());
    tokens += n;
  }
  b.chars_per_token_ = tokens > 0.0 ? chars / tokens : 4.0;
  b.counts_ = std::make_shared<const std::map<std::string, int>>(std::move(counts));
  return b;
}

TokenBudgeter TokenBudgeter::load_external(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open token-count sidecar " + path);
  std::map<std::string, int> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      counts[j.at("text").get<std::string>()] = j.at("tokens").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return from_external_counts(std::move(counts));
}

int TokenBudgeter::count(std::string_view text) const {
  if (mode_ == Mode::external) {
    const auto it = counts_->find(std::string(text));
    if (it == counts_->end()) {
      throw InputError("external token count missing for a text of " +
                       std::to_string(text.size()) + " bytes");
    }
    return it->second;
  }
  if (text.empty()) return 0;
  return static_cast<int>(std::ceil(static_cast<double>(text.size()) / chars_per_token_));
}

double TokenBudgeter::chars_for(double tokens) const { return tokens * chars_per_token_; }

// ---------------------------------------------------------------------------
// LongChat-Lines

namespace {

constexpr std::string_view kLinesHeader =
    "Below is a record of lines to remember. Each line starts with `line <key>` and ends "
    "with a numeric REGISTER_CONTENT in angle brackets. Memorize the REGISTER_CONTENT of "
    "every line; once the record ends you will be asked for the REGISTER_CONTENT of one "
    "of them.\n\n";

std::string lines_footer(std::string_view key) {
  return "\n\nThe record is over. What is the REGISTER_CONTENT in line " + std::string(key) +
         "? I need the number.";
}

std::string register_line(std::string_view key, long value) {
  return "line " + std::string(key) + ": REGISTER_CONTENT is <" + std::to_string(value) + ">";
}

bool all_lower_alpha(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

std::optional<ParsedLine> parse_register_line(std::string_view line) {
  constexpr std::string_view kPrefix = "line ";
  constexpr std::string_view kMid = ": REGISTER_CONTENT is <";
  if (line.substr(0, kPrefix.size()) != kPrefix || line.empty() || line.back() != '>') {
    return std::nullopt;
  }
  const auto mid = line.find(kMid);
  if (mid == std::string_view::npos) return std::nullopt;
  const std::string_view key = line.substr(kPrefix.size(), mid - kPrefix.size());
  const auto dash = key.find('-');
  if (dash == std::string_view::npos || !all_lower_alpha(key.substr(0, dash)) ||
      !all_lower_alpha(key.substr(dash + 1))) {
    return std::nullopt;
  }
  const std::string_view digits =
      line.substr(mid + kMid.size(), line.size() - 1 - (mid + kMid.size()));
  if (digits.empty() || digits.size() > 12 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return ParsedLine{std::string(key), std::stol(std::string(digits))};
}

TaskSample gen_longchat_lines(int num_lines, Rng& rng) {
  if (num_lines < 1) throw InvalidParameter("longchat-lines needs num_lines >= 1");
  const auto& adjectives = adjective_list();
  const auto& nouns = noun_list();
  if (static_cast<std::size_t>(num_lines) > line_key_capacity()) {
    throw CapacityError("requested " + std::to_string(num_lines) + " lines but only " +
                        std::to_string(line_key_capacity()) + " unique keys exist");
  }
  std::unordered_set<std::uint64_t> used;
  std::vector<std::string> keys;
  std::vector<long> values;
  keys.reserve(static_cast<std::size_t>(num_lines));
  while (static_cast<int>(keys.size()) < num_lines) {
    const auto a = static_cast<std::uint64_t>(rng.uniform_int(0, adjectives.size() - 1));
    const auto n = static_cast<std::uint64_t>(rng.uniform_int(0, nouns.size() - 1));
    if (!used.insert(a * nouns.size() + n).second) continue;
    keys.push_back(std::string(adjectives[a]) + "-" + std::string(nouns[n]));
    values.push_back(static_cast<long>(rng.uniform_int(1000, 99999)));
  }
  const auto q = static_cast<std::size_t>(rng.uniform_int(0, num_lines - 1));

  TaskSample s;
  s.task = Task::longchat_lines;
  s.prompt = std::string(kLinesHeader);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) s.prompt += '\n';
    s.prompt += register_line(keys[i], values[i]);
  }
  s.prompt += lines_footer(keys[q]);
  s.answer = std::to_string(values[q]);
  s.num_lines = num_lines;
  s.answer_location = AnswerLocation::na;
  s.question_location = QuestionLocation::end;
  s.target_tokens = std::max(1, TokenBudgeter().count(s.prompt));
  return s;
}

TaskSample gen_longchat_lines(int num_lines, std::uint64_t seed) {
  Rng rng(seed);
  TaskSample s = gen_longchat_lines(num_lines, rng);
  s.seed = seed;
  return s;
}

int lines_for_budget(int target_tokens, const TokenBudgeter& budgeter) {
  // Per-line and fixed character costs, averaged over a fixed calibration set.
  static const std::pair<double, double> calibration = [] {
    constexpr int kSmall = 1, kLarge = 400, kSamples = 8;
    double small = 0.0, large = 0.0;
    for (std::uint64_t s = 0; s < kSamples; ++s) {
      small += static_cast<double>(gen_longchat_lines(kSmall, 0xCA11B0000ULL + s).prompt.size());
      large += static_cast<double>(gen_longchat_lines(kLarge, 0xCA11B1000ULL + s).prompt.size());
    }
    small /= kSamples;
    large /= kSamples;
    const double per_line = (large - small) / (kLarge - kSmall);
    return std::pair{per_line, small - per_line};
  }();
  const auto [per_line_chars, fixed_chars] = calibration;
  const double cpt = budgeter.chars_for(1.0);
  const double per_line = per_line_chars / cpt;
  const double fixed = fixed_chars / cpt;
  if (target_tokens <= 0) return 1;
  const double need = std::ceil((target_tokens - fixed) / per_line);
  return std::max(1, static_cast<int>(need));
}

// ---------------------------------------------------------------------------
// Numeric mutation

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string canonical_digits(std::string_view answer) {
  if (answer.empty() || !std::all_of(answer.begin(), answer.end(), is_digit)) {
    throw InputError("numeric answer expected, got `" + std::string(answer) + "`");
  }
  const auto nz = answer.find_first_not_of('0');
  return nz == std::string_view::npos ? std::string("0") : std::string(answer.substr(nz));
}

constexpr int kMaxRedraws = 10000;

}  // namespace

std::string mutate_numeric_answer(std::string_view answer, const IntDraw& draw) {
  const std::string digits = canonical_digits(answer);
  if (digits.size() == 4) {
    const int value = std::stoi(digits);
    if (value >= 1000 && value <= 2100) {
      for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        const auto offset = draw(-10, 10);
        const auto moved = value + offset;
        if (offset == 0 || moved < 1000 || moved > 2100) continue;
        return std::to_string(moved);
      }
      throw ConsistencyError("could not draw an in-range year offset");
    }
  }
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::string out(digits.size(), '0');
    out[0] = static_cast<char>('0' + draw(digits.size() == 1 ? 0 : 1, 9));
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = static_cast<char>('0' + draw(0, 9));
    if (out != digits) return out;
  }
  throw ConsistencyError("could not draw a distinct number");
}

std::string mutate_numeric_answer(std::string_view answer, Rng& rng) {
  return mutate_numeric_answer(
      answer, [&rng](std::int64_t lo, std::int64_t hi) { return rng.uniform_int(lo, hi); });
}

std::vector<std::size_t> find_occurrences(std::string_view haystack, std::string_view needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  const bool digit_front = is_digit(needle.front()), digit_back = is_digit(needle.back());
  const bool alpha_front = is_alpha(needle.front()), alpha_back = is_alpha(needle.back());
  auto blocks = [](char neighbour, bool digit_edge, bool alpha_edge) {
    if (digit_edge) return is_digit(neighbour);
    if (alpha_edge) return is_digit(neighbour) || is_alpha(neighbour);
    return false;
  };
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    if (pos > 0 && blocks(haystack[pos - 1], digit_front, alpha_front)) continue;
    const std::size_t after = pos + needle.size();
    if (after < haystack.size() && blocks(haystack[after], digit_back, alpha_back)) continue;
    out.push_back(pos);
  }
  return out;
}

std::string replace_occurrences(std::string_view haystack, std::string_view needle,
                                std::string_view replacement) {
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t pos : find_occurrences(haystack, needle)) {
    if (pos < cursor) continue;  // overlapping match
    out.append(haystack.substr(cursor, pos - cursor));
    out.append(replacement);
    cursor = pos + needle.size();
  }
  out.append(haystack.substr(cursor));
  return out;
}

// ---------------------------------------------------------------------------
// QA prompt assembly

namespace {

constexpr std::string_view kQAIntro =
    "Answer the question using only the document below. Reply with a short answer "
    "copied from the document.\n\n";
constexpr std::string_view kDocLabel = "Document:\n";
constexpr std::string_view kQuestionLabel = "Question: ";
constexpr std::string_view kAnswerLabel = "Answer:";

std::string assemble_qa_prompt(std::string_view document, std::string_view question,
                               QuestionLocation where) {
  std::string p(kQAIntro);
  if (where == QuestionLocation::start) {
    p.append(kQuestionLabel).append(question).append("\n\n");
    p.append(kDocLabel).append(document).append("\n\n");
    p.append(kAnswerLabel);
  } else {
    p.append(kDocLabel).append(document).append("\n\n");
    p.append(kQuestionLabel).append(question).append("\n");
    p.append(kAnswerLabel);
  }
  return p;
}

bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

// Last `len` bytes of `text`, advanced to the start of a word.
std::string_view take_tail(std::string_view text, std::size_t len) {
  if (len >= text.size()) return text;
  std::size_t start = text.size() - len;
  if (start > 0 && !is_space(text[start - 1])) {
    while (start < text.size() && !is_space(text[start])) ++start;
  }
  while (start < text.size() && is_space(text[start])) ++start;
  return text.substr(start);
}

// First `len` bytes of `text`, cut back to the end of a word.
std::string_view take_head(std::string_view text, std::size_t len) {
  if (len >= text.size()) return text;
  std::size_t end = len;
  if (!is_space(text[end])) {
    while (end > 0 && !is_space(text[end - 1])) --end;
  }
  while (end > 0 && is_space(text[end - 1])) --end;
  return text.substr(0, end);
}

struct Band {
  double lo, hi;
};

Band band_for(AnswerLocation where) {
  switch (where) {
    case AnswerLocation::start: return {0.0, 0.1};
    case AnswerLocation::end: return {0.9, 1.0};
    default: return {0.1, 0.9};
  }
}

constexpr int kPlacementAttempts = 32;
constexpr double kBudgetTolerance = 0.15;

TaskSample build_qa_sample(const QARecord& record, Placement placement, int target_tokens,
                           const TokenBudgeter& budgeter, Rng& rng,
                           std::span<const std::string> filler, bool alter) {
  if (target_tokens <= 0) throw InvalidParameter("target_tokens must be > 0");
  if (record.answer.empty()) throw ConsistencyError("QA record has an empty answer");
  if (placement.answer == AnswerLocation::na || placement.question == QuestionLocation::na) {
    throw InvalidParameter("QA samples need concrete answer and question locations");
  }
  if (find_occurrences(record.document, record.answer).empty()) {
    throw ConsistencyError("answer `" + record.answer + "` does not occur in the document");
  }

  std::string answer = record.answer;
  std::string document = record.document;
  std::string question = record.question;
  std::vector<std::string> pads;
  for (const std::string& f : filler) pads.push_back(f);
  if (alter) {
    answer = mutate_numeric_answer(record.answer, rng);
    document = replace_occurrences(document, record.answer, answer);
    question = replace_occurrences(question, record.answer, answer);
    for (std::string& p : pads) p = replace_occurrences(p, record.answer, answer);
  }
  // Padding text must not introduce an earlier answer occurrence.
  std::erase_if(pads, [&](const std::string& p) {
    return p.empty() || !find_occurrences(p, answer).empty();
  });

  const std::size_t first = find_occurrences(document, answer).front();
  const std::string_view before = std::string_view(document).substr(0, first);
  const std::string_view after = std::string_view(document).substr(first + answer.size());

  const std::size_t overhead = assemble_qa_prompt("", question, placement.question).size();
  const double doc_chars_f = budgeter.chars_for(target_tokens) - static_cast<double>(overhead);
  if (doc_chars_f < 10.0 * static_cast<double>(answer.size()) || doc_chars_f < 40.0) {
    throw PlacementError("token budget " + std::to_string(target_tokens) +
                         " is too small to place the answer");
  }
  const auto doc_chars = static_cast<std::size_t>(doc_chars_f);

  // Build long enough before/after pools by cycling padding text.
  auto grow = [&pads](std::string pool, std::size_t need, bool prepend, std::size_t offset) {
    if (pads.empty()) return pool;
    for (std::size_t k = 0; pool.size() < need && k < 100000; ++k) {
      const std::string& p = pads[(offset + k) % pads.size()];
      pool = prepend ? p + "\n\n" + pool : pool + "\n\n" + p;
    }
    return pool;
  };
  const std::string before_pool = grow(std::string(before), doc_chars, true, 0);
  const std::string after_pool = grow(std::string(after), doc_chars, false, pads.size() / 2);

  const Band band = band_for(placement.answer);
  const double margin = std::min(0.02, (band.hi - band.lo) / 4.0);
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    const double r = rng.uniform(band.lo + margin, band.hi - margin);
    const auto want_prefix = static_cast<std::size_t>(r * static_cast<double>(doc_chars));
    const std::string_view prefix = take_tail(before_pool, want_prefix);
    const std::size_t rest = doc_chars > prefix.size() + answer.size()
                                 ? doc_chars - prefix.size() - answer.size()
                                 : 0;
    const std::string_view suffix = take_head(after_pool, rest);
    std::string doc;
    doc.reserve(prefix.size() + answer.size() + suffix.size());
    doc.append(prefix).append(answer).append(suffix);

    const auto occ = find_occurrences(doc, answer);
    if (occ.empty()) continue;
    const double rel = static_cast<double>(occ.front()) / static_cast<double>(doc.size());
    if (!placement_satisfied(placement.answer, rel)) continue;
    std::string prompt = assemble_qa_prompt(doc, question, placement.question);
    if (alter && !find_occurrences(prompt, record.answer).empty()) continue;
    const double measured = budgeter.count(prompt);
    if (std::fabs(measured - target_tokens) > kBudgetTolerance * target_tokens) continue;

    TaskSample s;
    s.task = alter ? Task::altqa : Task::ffqa;
    s.prompt = std::move(prompt);
    s.answer = answer;
    s.target_tokens = target_tokens;
    s.answer_location = placement.answer;
    s.question_location = placement.question;
    return s;
  }
  throw PlacementError("could not place the answer in the " +
                       std::string(to_string(placement.answer)) + " band within " +
                       std::to_string(target_tokens) + " tokens (not enough text?)");
}

}  // namespace

bool placement_satisfied(AnswerLocation where, double rel) {
  switch (where) {
    case AnswerLocation::start: return rel >= 0.0 && rel < 0.1;
    case AnswerLocation::middle: return rel >= 0.1 && rel < 0.9;
    case AnswerLocation::end: return rel >= 0.9 && rel < 1.0;
    case AnswerLocation::na: return true;
  }
  return false;
}

TaskSample build_altqa_sample(const QARecord& record, Placement placement, int target_tokens,
                              const TokenBudgeter& budgeter, Rng& rng,
                              std::span<const std::string> filler) {
  canonical_digits(record.answer);  // numeric answers only
  return build_qa_sample(record, placement, target_tokens, budgeter, rng, filler, true);
}

TaskSample build_ffqa_sample(const QARecord& record, Placement placement, int target_tokens,
                             const TokenBudgeter& budgeter, Rng& rng,
                             std::span<const std::string> filler) {
  return build_qa_sample(record, placement, target_tokens, budgeter, rng, filler, false);
}

std::optional<QAPromptParts> split_qa_prompt(std::string_view prompt) {
  if (prompt.substr(0, kQAIntro.size()) != kQAIntro) return std::nullopt;
  std::string_view body = prompt.substr(kQAIntro.size());
  QAPromptParts parts;
  if (body.substr(0, kQuestionLabel.size()) == kQuestionLabel) {
    const std::string marker = "\n\n" + std::string(kDocLabel);
    const auto q_end = body.find(marker);
    if (q_end == std::string_view::npos) return std::nullopt;
    parts.question = std::string(body.substr(kQuestionLabel.size(), q_end - kQuestionLabel.size()));
    const std::string_view rest = body.substr(q_end + marker.size());
    const std::string tail = "\n\n" + std::string(kAnswerLabel);
    if (rest.size() < tail.size() || rest.substr(rest.size() - tail.size()) != tail) {
      return std::nullopt;
    }
    parts.document = std::string(rest.substr(0, rest.size() - tail.size()));
    return parts;
  }
  if (body.substr(0, kDocLabel.size()) != kDocLabel) return std::nullopt;
  body = body.substr(kDocLabel.size());
  const std::string marker = "\n\n" + std::string(kQuestionLabel);
  const auto d_end = body.rfind(marker);
  if (d_end == std::string_view::npos) return std::nullopt;
  parts.document = std::string(body.substr(0, d_end));
  std::string_view q = body.substr(d_end + marker.size());
  const std::string tail = "\n" + std::string(kAnswerLabel);
  if (q.size() < tail.size() || q.substr(q.size() - tail.size()) != tail) return std::nullopt;
  parts.question = std::string(q.substr(0, q.size() - tail.size()));
  return parts;
}

// ---------------------------------------------------------------------------
// Datasets

namespace {

constexpr int kRecordRetries = 8;

bool is_numeric(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

TaskSample qa_sample(const GenOptions& opt, std::span<const QARecord> corpus, int target,
                     Placement placement, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (opt.task == Task::ffqa || is_numeric(corpus[i].answer)) eligible.push_back(i);
  }
  if (eligible.empty()) {
    throw InputError(opt.task == Task::altqa ? "corpus has no records with numeric answers"
                                             : "QA tasks need a nonempty corpus");
  }
  std::string last_error;
  for (int attempt = 0; attempt < kRecordRetries; ++attempt) {
    const std::size_t pick =
        eligible[static_cast<std::size_t>(rng.uniform_int(0, eligible.size() - 1))];
    std::vector<std::string> filler;
    for (std::size_t k = 1; k < corpus.size(); ++k) {
      filler.push_back(corpus[(pick + k) % corpus.size()].document);
    }
    try {
      return opt.task == Task::altqa
                 ? build_altqa_sample(corpus[pick], placement, target, opt.budgeter, rng, filler)
                 : build_ffqa_sample(corpus[pick], placement, target, opt.budgeter, rng, filler);
    } catch (const PlacementError& e) {
      last_error = e.what();
    } catch (const ConsistencyError& e) {
      last_error = e.what();
    }
  }
  throw PlacementError("no corpus record could satisfy the request: " + last_error);
}

}  // namespace

std::vector<TaskSample> generate_dataset(const GenOptions& opt,
                                         std::span<const QARecord> corpus) {
  if (opt.count < 0) throw InvalidParameter("count must be >= 0");
  for (int len : opt.lengths) {
    if (len <= 0) throw InvalidParameter("lengths must be positive");
  }
  const bool qa = opt.task == Task::altqa || opt.task == Task::ffqa;
  const std::vector<AnswerLocation> answer_locs =
      qa ? opt.answer_locations : std::vector<AnswerLocation>{AnswerLocation::na};
  const std::vector<QuestionLocation> question_locs =
      qa ? opt.question_locations
         : std::vector<QuestionLocation>{opt.task == Task::toy_retrieval ? QuestionLocation::na
                                                                         : QuestionLocation::end};
  std::vector<TaskSample> out;
  std::uint64_t k = 0;
  for (int len : opt.lengths) {
    for (AnswerLocation al : answer_locs) {
      for (QuestionLocation ql : question_locs) {
        for (int c = 0; c < opt.count; ++c, ++k) {
          const std::uint64_t seed = opt.seed + k;
          Rng rng(seed);
          TaskSample s;
          switch (opt.task) {
            case Task::longchat_lines:
              s = gen_longchat_lines(lines_for_budget(len, opt.budgeter), rng);
              break;
            case Task::toy_retrieval: {
              const int pairs = toy_pairs_for_length(len, opt.toy_vocab);
              const ToyRetrieval t = gen_toy_retrieval(pairs, opt.toy_vocab, rng);
              s.task = Task::toy_retrieval;
              const auto prompt = t.prompt();
              s.prompt = token_text(prompt);
              s.answer = token_text(std::span<const int>(t.tokens).subspan(
                  t.answer_begin, t.answer_end - t.answer_begin));
              s.num_lines = pairs;
              s.answer_location = AnswerLocation::na;
              s.question_location = QuestionLocation::na;
              break;
            }
            case Task::altqa:
            case Task::ffqa:
              s = qa_sample(opt, corpus, len, Placement{al, ql}, rng);
              break;
          }
          s.target_tokens = len;
          s.seed = seed;
          s.id = std::string(to_string(opt.task)) + "-" + std::to_string(len) + "-" +
                 std::to_string(k);
          out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

}  // namespace ropelab
