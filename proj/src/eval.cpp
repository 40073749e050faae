#include "ropelab/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "ropelab/error.hpp"

namespace ropelab {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string fold(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string strip_zeros(std::string_view digits) {
  const auto nz = digits.find_first_not_of('0');
  return nz == std::string_view::npos ? std::string("0") : std::string(digits.substr(nz));
}

}  // namespace

std::string normalize_answer(std::string_view text) {
  std::size_t b = 0, e = text.size();
  auto strippable = [](unsigned char c) { return is_space(c) || std::ispunct(c); };
  while (b < e && strippable(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && strippable(static_cast<unsigned char>(text[e - 1]))) --e;
  return fold(text.substr(b, e - b));
}

bool score_sample(const TaskSample& sample, const OutputRecord& output) {
  if (sample.id != output.id) {
    throw PairingError("output id `" + output.id + "` does not match sample `" + sample.id + "`");
  }
  const std::string gold = normalize_answer(sample.answer);
  if (gold.empty()) return false;
  const std::string text = fold(output.output);
  if (std::all_of(gold.begin(), gold.end(), is_digit)) {
    const std::string want = strip_zeros(gold);
    for (std::size_t i = 0; i < text.size();) {
      if (!is_digit(text[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      if (strip_zeros(std::string_view(text).substr(i, j - i)) == want) return true;
      i = j;
    }
    return false;
  }
  return !find_occurrences(text, gold).empty();
}

const std::vector<int>& default_buckets() {
  static const std::vector<int> b = {2500, 3600, 4200, 4800, 7100, 9400,
                                     11800, 14000, 16000, 17500, 20000, 22000};
  return b;
}

int bucket_for(int target_tokens, std::span<const int> buckets) {
  int best = 0;
  bool found = false;
  for (int b : buckets) {
    if (b >= target_tokens && (!found || b < best)) {
      best = b;
      found = true;
    }
  }
  return found ? best : target_tokens;
}

EvalReport aggregate(std::span<const TaskSample> samples, std::span<const OutputRecord> outputs,
                     std::span<const int> buckets) {
  std::map<std::string, const OutputRecord*> by_id;
  for (const auto& o : outputs) {
    if (!by_id.emplace(o.id, &o).second) throw PairingError("duplicate output id `" + o.id + "`");
  }
  std::set<std::string> seen;
  using Key = std::tuple<int, AnswerLocation, QuestionLocation>;
  std::map<Key, EvalRow> rows;
  EvalReport report;
  std::set<std::string> tasks;
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second) throw PairingError("duplicate sample id `" + s.id + "`");
    tasks.insert(std::string(to_string(s.task)));
    const Key key{bucket_for(s.target_tokens, buckets), s.answer_location, s.question_location};
    EvalRow& row = rows[key];
    row.bucket = std::get<0>(key);
    row.answer_location = s.answer_location;
    row.question_location = s.question_location;
    const auto it = by_id.find(s.id);
    const bool ok = it != by_id.end() && score_sample(s, *it->second);
    ++row.n;
    ++report.n;
    if (ok) {
      ++row.correct;
      ++report.correct;
    }
  }
  for (const auto& [id, o] : by_id) {
    if (!seen.count(id)) throw PairingError("output id `" + id + "` has no matching sample");
  }
  for (auto& [key, row] : rows) report.rows.push_back(row);
  if (tasks.size() == 1) report.task = *tasks.begin();
  if (tasks.size() > 1) report.task = "mixed";
  return report;
}

TableFormat parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "markdown" || s == "md") return TableFormat::markdown;
  throw InvalidParameter("table format must be csv or markdown: " + std::string(s));
}

std::string render_tables(const EvalReport& report, TableFormat format) {
  auto acc = [](double a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", a);
    return std::string(buf);
  };
  const std::string task = report.task.empty() ? "-" : report.task;
  std::string out;
  if (format == TableFormat::csv) {
    out = "task,context_tokens,answer_location,question_location,n,correct,accuracy\n";
    for (const auto& r : report.rows) {
      out += task + "," + std::to_string(r.bucket) + "," +
             std::string(to_string(r.answer_location)) + "," +
             std::string(to_string(r.question_location)) + "," + std::to_string(r.n) + "," +
             std::to_string(r.correct) + "," + acc(r.accuracy()) + "\n";
    }
    if (!report.rows.empty()) {
      out += task + ",all,all,all," + std::to_string(report.n) + "," +
             std::to_string(report.correct) + "," + acc(report.accuracy()) + "\n";
    }
    return out;
  }
  out = "| task | context tokens | answer location | question location | n | correct | accuracy |\n";
  out += "|---|---:|---|---|---:|---:|---:|\n";
  for (const auto& r : report.rows) {
    out += "| " + task + " | " + std::to_string(r.bucket) + " | " +
           std::string(to_string(r.answer_location)) + " | " +
           std::string(to_string(r.question_location)) + " | " + std::to_string(r.n) + " | " +
           std::to_string(r.correct) + " | " + acc(r.accuracy()) + " |\n";
  }
  if (!report.rows.empty()) {
    out += "| " + task + " | all | all | all | " + std::to_string(report.n) + " | " +
           std::to_string(report.correct) + " | " + acc(report.accuracy()) + " |\n";
  }
  return out;
}

std::vector<Window> perplexity_windows(std::size_t document_length, int context, int eval_len) {
  if (eval_len < 1) throw InvalidParameter("eval_len must be >= 1");
  if (context <= eval_len) {
    throw InvalidParameter("context " + std::to_string(context) + " must exceed eval_len " +
                           std::to_string(eval_len));
  }
  const auto n = static_cast<std::size_t>(context);
  if (document_length < n) {
    throw InputError("document has " + std::to_string(document_length) +
                     " tokens, fewer than the context " + std::to_string(context));
  }
  std::vector<Window> out;
  for (std::size_t b = 0; b + n <= document_length; b += n) {
    out.push_back(Window{b, b + n - static_cast<std::size_t>(eval_len), b + n});
  }
  return out;
}

PerplexityResult perplexity(const LogProbProvider& provider, std::span<const int> document,
                            int context, int eval_len) {
  const auto windows = perplexity_windows(document.size(), context, eval_len);
  // Neumaier summation.
  double nll = 0.0, carry = 0.0;
  std::size_t scored = 0;
  for (const Window& w : windows) {
    const std::vector<int> tokens(document.begin() + static_cast<long>(w.begin),
                                  document.begin() + static_cast<long>(w.end));
    const std::vector<double> lp = provider(tokens);
    if (lp.size() != tokens.size() - 1) {
      throw ConsistencyError("provider returned " + std::to_string(lp.size()) +
                             " log-probabilities for " + std::to_string(tokens.size()) +
                             " tokens");
    }
    // lp[j] scores token j + 1; the scored tokens are the window's last eval_len.
    const std::size_t first = w.scored_begin - w.begin - 1;
    for (std::size_t j = first; j < lp.size(); ++j) {
      if (!std::isfinite(lp[j])) throw NumericOverflow("provider returned a non-finite log-probability");
      const double x = -lp[j];
      const double t = nll + x;
      carry += std::fabs(nll) >= std::fabs(x) ? (nll - t) + x : (x - t) + nll;
      nll = t;
      ++scored;
    }
  }
  PerplexityResult r;
  r.mean_nll = (nll + carry) / static_cast<double>(scored);
  r.perplexity = std::exp(r.mean_nll);
  r.windows = static_cast<int>(windows.size());
  r.context = context;
  r.eval_len = eval_len;
  return r;
}

namespace {

class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
      throw InputError("cannot create pipes for provider `" + command + "`");
    }
    std::signal(SIGPIPE, SIG_IGN);
    pid_ = fork();
    if (pid_ < 0) throw InputError("cannot start provider `" + command + "`");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_ = fdopen(to_child[1], "w");
    out_ = fdopen(from_child[0], "r");
  }
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;
  ~ChildProcess() {
    if (in_) std::fclose(in_);
    if (out_) std::fclose(out_);
    int status = 0;
    if (pid_ > 0) waitpid(pid_, &status, 0);
  }

  std::string request(const std::string& line) {
    if (std::fputs(line.c_str(), in_) < 0 || std::fputc('\n', in_) < 0 || std::fflush(in_) != 0) {
      throw InputError("provider process closed its input");
    }
    std::string reply;
    int c;
    while ((c = std::fgetc(out_)) != EOF && c != '\n') reply.push_back(static_cast<char>(c));
    if (c == EOF && reply.empty()) throw InputError("provider process ended without a reply");
    return reply;
  }

 private:
  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
};

}  // namespace

LogProbProvider subprocess_provider(const std::string& command) {
  auto child = std::make_shared<ChildProcess>(command);
  return [child](const std::vector<int>& tokens) {
    const std::string reply = child->request(nlohmann::json(tokens).dump());
    try {
      return nlohmann::json::parse(reply).get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("provider reply is not a JSON number array: ") + e.what());
    }
  };
}

}  // namespace ropelab
