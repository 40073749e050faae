#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ropelab/error.hpp"
#include "ropelab/model.hpp"

namespace ropelab {

namespace {

constexpr std::string_view kMagic = "ropelab-checkpoint 1";

void append_hex(std::string& out, double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  out.append(buf, ptr);
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string checkpoint_text(const ModelConfig& config, const ModelParams& params) {
  std::string out(kMagic);
  out += "\n[config]\n";
  for (const auto& [k, v] : config.key_values()) out += k + " = " + v + "\n";
  const auto tensors = params.tensors();
  out += "[tensors] " + std::to_string(tensors.size()) + "\n";
  for (const auto& [name, t] : tensors) {
    out += "tensor " + name + " " + std::to_string(t->rows()) + " " + std::to_string(t->cols()) +
           "\n";
    for (Eigen::Index r = 0; r < t->rows(); ++r) {
      for (Eigen::Index c = 0; c < t->cols(); ++c) {
        if (c) out += ' ';
        append_hex(out, (*t)(r, c));
      }
      out += '\n';
    }
  }
  out += "end\n";
  return out;
}

void save_checkpoint(const std::string& path, const ModelConfig& config,
                     const ModelParams& params) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write checkpoint " + path);
  os << checkpoint_text(config, params);
  if (!os) throw InputError("failed writing checkpoint " + path);
}

std::pair<ModelConfig, ModelParams> parse_checkpoint(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!next_line(in, line) || line != kMagic) {
    throw InputError("not a ropelab checkpoint (bad header)");
  }
  if (!next_line(in, line) || line != "[config]") throw InputError("checkpoint: missing [config]");
  std::string config_text;
  std::size_t tensor_count = 0;
  while (true) {
    if (!next_line(in, line)) throw InputError("checkpoint: truncated config section");
    if (line.rfind("[tensors] ", 0) == 0) {
      tensor_count = static_cast<std::size_t>(parse_int("tensors", line.substr(10)));
      break;
    }
    config_text += line + "\n";
  }
  KeyValues kv = KeyValues::parse(config_text);
  ModelConfig config = ModelConfig::from_key_values(kv);
  kv.expect_consumed();
  config.validate();

  ModelParams params = init_params(config);  // establishes shapes
  auto tensors = params.tensors();
  if (tensors.size() != tensor_count) {
    throw InputError("checkpoint: tensor count does not match the configuration");
  }
  for (auto& [name, t] : tensors) {
    if (!next_line(in, line)) throw InputError("checkpoint: missing tensor " + name);
    std::istringstream hdr(line);
    std::string word, got_name;
    long rows = -1, cols = -1;
    hdr >> word >> got_name >> rows >> cols;
    if (word != "tensor" || got_name != name || rows != t->rows() || cols != t->cols()) {
      throw InputError("checkpoint: unexpected tensor header `" + line + "` (want " + name + ")");
    }
    for (Eigen::Index r = 0; r < t->rows(); ++r) {
      if (!next_line(in, line)) throw InputError("checkpoint: truncated tensor " + name);
      const char* p = line.data();
      const char* end = line.data() + line.size();
      for (Eigen::Index c = 0; c < t->cols(); ++c) {
        while (p < end && *p == ' ') ++p;
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v, std::chars_format::hex);
        if (ec != std::errc{}) throw InputError("checkpoint: bad value in tensor " + name);
        (*t)(r, c) = v;
        p = next;
      }
    }
  }
  if (!next_line(in, line) || line != "end") throw InputError("checkpoint: missing end marker");
  return {config, params};
}

std::pair<ModelConfig, ModelParams> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace ropelab
