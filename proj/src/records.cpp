#include "ropelab/records.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ropelab/error.hpp"

namespace ropelab {

namespace {

using ojson = nlohmann::ordered_json;

std::string dump(const ojson& j) {
  try {
    return j.dump(-1, ' ', false, ojson::error_handler_t::strict);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("cannot encode record: ") + e.what());
  }
}

ojson parse_object(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const ojson::exception& e) {
    throw InputError(std::string("malformed JSON line: ") + e.what());
  }
  if (!j.is_object()) throw InputError("JSON line is not an object");
  return j;
}

void check_schema(const ojson& j, std::string_view want, bool required) {
  const auto it = j.find("schema");
  if (it == j.end()) {
    if (required) throw InputError("record lacks a schema field (want " + std::string(want) + ")");
    return;
  }
  if (!it->is_string() || it->get<std::string>() != want) {
    throw InputError("unexpected schema " + it->dump() + " (want " + std::string(want) + ")");
  }
}

template <class T>
T field(const ojson& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("record lacks field `") + key + "`");
  try {
    return it->get<T>();
  } catch (const ojson::exception&) {
    throw InputError(std::string("field `") + key + "` has the wrong type");
  }
}

template <class T>
std::vector<T> read_lines(const std::string& path, const std::function<T(std::string_view)>& parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(parse(line));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string to_json_line(const TaskSample& s) {
  ojson j;
  j["schema"] = kTaskSampleSchema;
  j["id"] = s.id;
  j["task"] = to_string(s.task);
  j["prompt"] = s.prompt;
  j["answer"] = s.answer;
  j["target_tokens"] = s.target_tokens;
  j["answer_location"] = to_string(s.answer_location);
  j["question_location"] = to_string(s.question_location);
  j["num_lines"] = s.num_lines;
  j["seed"] = s.seed;
  return dump(j);
}

std::string to_json_line(const QARecord& r) {
  ojson j;
  j["schema"] = kQARecordSchema;
  j["document"] = r.document;
  j["question"] = r.question;
  j["answer"] = r.answer;
  return dump(j);
}

std::string to_json_line(const OutputRecord& o) {
  ojson j;
  j["schema"] = kOutputSchema;
  j["id"] = o.id;
  j["output"] = o.output;
  return dump(j);
}

TaskSample parse_task_sample(std::string_view line) {
  const ojson j = parse_object(line);
  check_schema(j, kTaskSampleSchema, true);
  TaskSample s;
  try {
    s.id = field<std::string>(j, "id");
    s.task = parse_task(field<std::string>(j, "task"));
    s.prompt = field<std::string>(j, "prompt");
    s.answer = field<std::string>(j, "answer");
    s.target_tokens = field<int>(j, "target_tokens");
    s.answer_location = parse_answer_location(field<std::string>(j, "answer_location"));
    s.question_location = parse_question_location(field<std::string>(j, "question_location"));
    s.num_lines = field<int>(j, "num_lines");
    s.seed = field<std::uint64_t>(j, "seed");
  } catch (const InvalidParameter& e) {
    throw InputError(e.what());
  }
  if (s.target_tokens <= 0) throw InputError("target_tokens must be > 0");
  return s;
}

QARecord parse_qa_record(std::string_view line) {
  const ojson j = parse_object(line);
  check_schema(j, kQARecordSchema, false);
  return QARecord{field<std::string>(j, "document"), field<std::string>(j, "question"),
                  field<std::string>(j, "answer")};
}

OutputRecord parse_output_record(std::string_view line) {
  const ojson j = parse_object(line);
  check_schema(j, kOutputSchema, false);
  OutputRecord o{field<std::string>(j, "id"), field<std::string>(j, "output")};
  if (o.id.empty()) throw InputError("output record has an empty id");
  return o;
}

std::string jsonl_text(std::span<const TaskSample> samples) {
  std::string out;
  for (const auto& s : samples) out += to_json_line(s) + "\n";
  return out;
}

std::string jsonl_text(std::span<const OutputRecord> outputs) {
  std::string out;
  for (const auto& o : outputs) out += to_json_line(o) + "\n";
  return out;
}

std::vector<TaskSample> read_task_samples(const std::string& path) {
  return read_lines<TaskSample>(path, parse_task_sample);
}

std::vector<QARecord> read_qa_records(const std::string& path) {
  return read_lines<QARecord>(path, parse_qa_record);
}

std::vector<OutputRecord> read_output_records(const std::string& path) {
  return read_lines<OutputRecord>(path, parse_output_record);
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InputError("cannot write " + path);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw InputError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ropelab
