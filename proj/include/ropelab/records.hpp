#pragma once

// JSON Lines serialization for datasets, source corpora and model outputs.
// Every record carries a `schema` tag; fields are emitted in a fixed order.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/taskgen.hpp"

namespace ropelab {

inline constexpr std::string_view kTaskSampleSchema = "ropelab.task_sample.v1";
inline constexpr std::string_view kQARecordSchema = "ropelab.qa_record.v1";
inline constexpr std::string_view kOutputSchema = "ropelab.output.v1";

struct OutputRecord {
  std::string id;
  std::string output;
};

// One JSON object without the trailing newline.
std::string to_json_line(const TaskSample& s);
std::string to_json_line(const QARecord& r);
std::string to_json_line(const OutputRecord& o);

TaskSample parse_task_sample(std::string_view line);
// The schema tag is optional on corpus input; when present it must match.
QARecord parse_qa_record(std::string_view line);
OutputRecord parse_output_record(std::string_view line);

std::string jsonl_text(std::span<const TaskSample> samples);
std::string jsonl_text(std::span<const OutputRecord> outputs);

std::vector<TaskSample> read_task_samples(const std::string& path);
std::vector<QARecord> read_qa_records(const std::string& path);
std::vector<OutputRecord> read_output_records(const std::string& path);

// Writes `text` to `path` (throws InputError when the file cannot be written).
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace ropelab
