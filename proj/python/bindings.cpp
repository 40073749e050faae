#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ropelab/attention.hpp"
#include "ropelab/config.hpp"
#include "ropelab/error.hpp"
#include "ropelab/eval.hpp"
#include "ropelab/records.hpp"
#include "ropelab/taskgen.hpp"
#include "ropelab/toy.hpp"

namespace py = pybind11;
using namespace ropelab;

namespace {

FrequencyBasis basis_of(const std::vector<double>& freqs) {
  FrequencyBasis b;
  b.d = static_cast<int>(2 * freqs.size());
  b.freqs = freqs;
  return b;
}

PositionSchedule schedule_of(const std::vector<double>& positions) {
  PositionSchedule s;
  s.positions = positions;
  return s;
}

Phase parse_phase(const std::string& phase) {
  if (phase == "train") return Phase::train;
  if (phase == "eval") return Phase::eval;
  throw InvalidParameter("phase must be train or eval: " + phase);
}

std::vector<TaskSample> samples_from_text(const std::string& text) {
  std::vector<TaskSample> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) out.push_back(parse_task_sample(std::string_view(text).substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::vector<OutputRecord> outputs_from_text(const std::string& text) {
  std::vector<OutputRecord> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) out.push_back(parse_output_record(std::string_view(text).substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotary encoding kernels, long-context task generators and scoring";

  auto base_error = py::register_exception<Error>(m, "RopelabError");
  py::register_exception<InvalidDimension>(m, "InvalidDimension", base_error.ptr());
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base_error.ptr());
  py::register_exception<EmptySequence>(m, "EmptySequence", base_error.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base_error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base_error.ptr());
  py::register_exception<InputError>(m, "InputError", base_error.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base_error.ptr());
  py::register_exception<PlacementError>(m, "PlacementError", base_error.ptr());
  py::register_exception<PairingError>(m, "PairingError", base_error.ptr());
  py::register_exception<NumericOverflow>(m, "NumericOverflow", base_error.ptr());
  py::register_exception<Divergence>(m, "Divergence", base_error.ptr());

  m.def("rope_basis", [](int d, double base) { return rope_basis(d, base).freqs; }, py::arg("d"),
        py::arg("base") = 10000.0);
  m.def("power_basis",
        [](int d, double base, double k) { return power_basis(d, base, {k}).freqs; },
        py::arg("d"), py::arg("base") = 10000.0, py::arg("k") = 0.5);
  m.def(
      "truncated_basis",
      [](int d, double base, double a, double b, double rho) {
        return truncated_basis(d, base, {a, b, rho}).freqs;
      },
      py::arg("d"), py::arg("base") = 10000.0, py::arg("a") = TruncationParams{}.a,
      py::arg("b") = TruncationParams{}.b, py::arg("rho") = TruncationParams{}.rho);
  m.def(
      "xpos_amplitudes",
      [](int d, double position, bool key, double gamma, double scale_base, bool narrow) {
        const auto p = default_xpos(d, gamma, scale_base, narrow ? Precision::narrow : Precision::wide);
        return key ? xpos_key_scale(d, p, position) : xpos_query_scale(d, p, position);
      },
      py::arg("d"), py::arg("position"), py::arg("key") = false, py::arg("gamma") = 0.4,
      py::arg("scale_base") = 512.0, py::arg("narrow") = false);

  py::class_<EncodingConfig>(m, "EncodingConfig")
      .def(py::init<>())
      .def_static("parse", &EncodingConfig::parse)
      .def("to_text", &EncodingConfig::to_text)
      .def("validate", &EncodingConfig::validate)
      .def_property(
          "scheme", [](const EncodingConfig& c) { return std::string(to_string(c.scheme)); },
          [](EncodingConfig& c, const std::string& s) { c.scheme = parse_scheme(s); })
      .def_readwrite("d", &EncodingConfig::d)
      .def_readwrite("base", &EncodingConfig::base)
      .def_readwrite("scale_train", &EncodingConfig::scale_train)
      .def_readwrite("scale_eval", &EncodingConfig::scale_eval)
      .def_readwrite("power_k", &EncodingConfig::power_k)
      .def_readwrite("seed", &EncodingConfig::seed)
      .def("basis", [](const EncodingConfig& c) { return c.basis().freqs; })
      .def(
          "positions",
          [](const EncodingConfig& c, std::size_t n, const std::string& phase) {
            return c.positions(n, parse_phase(phase)).positions;
          },
          py::arg("n"), py::arg("phase") = "eval");

  m.def(
      "apply_rotary",
      [](const Matrix& x, const std::vector<double>& positions, const std::vector<double>& freqs) {
        return apply_rotary(x, schedule_of(positions), basis_of(freqs));
      },
      py::arg("x"), py::arg("positions"), py::arg("freqs"));
  m.def(
      "scores",
      [](const Matrix& q, const Matrix& k, const std::vector<double>& positions,
         const std::vector<double>& freqs, bool causal) {
        return scores(q, k, schedule_of(positions), basis_of(freqs), std::nullopt, causal).values;
      },
      py::arg("q"), py::arg("k"), py::arg("positions"), py::arg("freqs"), py::arg("causal") = true);
  m.def(
      "softmax_rows",
      [](const Matrix& s) {
        ScoreMatrix sm;
        sm.values = s;
        sm.causal = false;
        return softmax_rows(sm).values;
      },
      py::arg("scores"));
  m.def(
      "attend",
      [](const Matrix& q, const Matrix& k, const Matrix& v, const std::vector<double>& positions,
         const std::vector<double>& freqs, bool causal) {
        return attend(q, k, v, schedule_of(positions), basis_of(freqs), std::nullopt, causal);
      },
      py::arg("q"), py::arg("k"), py::arg("v"), py::arg("positions"), py::arg("freqs"),
      py::arg("causal") = true);

  m.def(
      "mutate_numeric_answer",
      [](const std::string& answer, std::uint64_t seed) {
        Rng rng(seed);
        return mutate_numeric_answer(answer, rng);
      },
      py::arg("answer"), py::arg("seed"));
  m.def(
      "gen_longchat_lines",
      [](int num_lines, std::uint64_t seed) { return to_json_line(gen_longchat_lines(num_lines, seed)); },
      py::arg("num_lines"), py::arg("seed"), "One sample as a JSON line.");
  m.def(
      "generate_dataset",
      [](const std::string& task, int count, const std::vector<int>& lengths,
         const std::vector<std::string>& answer_locs, const std::vector<std::string>& question_locs,
         std::uint64_t seed, const std::string& corpus) {
        GenOptions opt;
        opt.task = parse_task(task);
        opt.count = count;
        opt.lengths = lengths;
        opt.answer_locations.clear();
        for (const auto& a : answer_locs) opt.answer_locations.push_back(parse_answer_location(a));
        opt.question_locations.clear();
        for (const auto& q : question_locs) {
          opt.question_locations.push_back(parse_question_location(q));
        }
        opt.seed = seed;
        std::vector<QARecord> records;
        if (!corpus.empty()) records = read_qa_records(corpus);
        return jsonl_text(generate_dataset(opt, records));
      },
      py::arg("task"), py::arg("count"), py::arg("lengths"),
      py::arg("answer_locs") = std::vector<std::string>{"middle"},
      py::arg("question_locs") = std::vector<std::string>{"end"}, py::arg("seed") = 0,
      py::arg("corpus") = "", "Dataset as JSON Lines text.");

  m.def("normalize_answer", &normalize_answer);
  m.def(
      "score_table",
      [](const std::string& dataset, const std::string& outputs, const std::vector<int>& buckets,
         const std::string& format) {
        const auto samples = samples_from_text(dataset);
        const auto outs = outputs_from_text(outputs);
        return render_tables(aggregate(samples, outs, buckets), parse_table_format(format));
      },
      py::arg("dataset"), py::arg("outputs"), py::arg("buckets") = default_buckets(),
      py::arg("format") = "csv", "Score JSON Lines outputs against a JSON Lines dataset.");
  m.def(
      "perplexity",
      [](const LogProbProvider& provider, const std::vector<int>& document, int context,
         int eval_len) {
        const PerplexityResult r = perplexity(provider, document, context, eval_len);
        py::dict d;
        d["perplexity"] = r.perplexity;
        d["mean_nll"] = r.mean_nll;
        d["windows"] = r.windows;
        d["context"] = r.context;
        d["eval_len"] = r.eval_len;
        return d;
      },
      py::arg("provider"), py::arg("document"), py::arg("context"), py::arg("eval_len") = 256);

  m.def("default_toy_run", [](std::uint64_t seed) { return default_toy_run(seed).to_text(); },
        py::arg("seed") = 0, "The trend-experiment run configuration as key = value text.");
  m.def("format_double", &format_double);
}
