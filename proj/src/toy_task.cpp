#include <algorithm>
#include <charconv>
#include <numeric>

#include "ropelab/error.hpp"
#include "ropelab/taskgen.hpp"

namespace ropelab {

ToyRetrieval gen_toy_retrieval(int num_pairs, const ToyVocab& vocab, Rng& rng) {
  if (num_pairs < 1) throw InvalidParameter("toy retrieval needs at least one pair");
  if (num_pairs > vocab.num_keys) {
    throw CapacityError("toy retrieval: " + std::to_string(num_pairs) + " pairs exceed " +
                        std::to_string(vocab.num_keys) + " distinct keys");
  }
  if (vocab.num_values < 1) throw InvalidParameter("toy retrieval needs at least one value");
  // Partial Fisher-Yates over the key alphabet gives distinct keys.
  std::vector<int> keys(static_cast<std::size_t>(vocab.num_keys));
  std::iota(keys.begin(), keys.end(), 0);
  for (int i = 0; i < num_pairs; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i, vocab.num_keys - 1));
    std::swap(keys[i], keys[j]);
  }
  ToyRetrieval out;
  out.tokens.reserve(static_cast<std::size_t>(2 * num_pairs + 3));
  std::vector<int> values(static_cast<std::size_t>(num_pairs));
  for (int i = 0; i < num_pairs; ++i) {
    values[i] = static_cast<int>(rng.uniform_int(0, vocab.num_values - 1));
    out.tokens.push_back(vocab.key_token(keys[i]));
    out.tokens.push_back(vocab.value_token(values[i]));
  }
  const auto q = static_cast<std::size_t>(rng.uniform_int(0, num_pairs - 1));
  out.tokens.push_back(ToyVocab::kQuery);
  out.tokens.push_back(vocab.key_token(keys[q]));
  out.answer_begin = out.tokens.size();
  out.tokens.push_back(vocab.value_token(values[q]));
  out.answer_end = out.tokens.size();
  return out;
}

int toy_pairs_for_length(int length) { return std::max(1, (length - 3) / 2); }

int toy_pairs_for_length(int length, const ToyVocab& vocab) {
  return std::max(1, std::min(toy_pairs_for_length(length), vocab.num_keys));
}

std::vector<int> parse_token_text(std::string_view text) {
  std::vector<int> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{} || (next < end && *next != ' ')) {
      throw InputError("malformed token list: " + std::string(text));
    }
    out.push_back(v);
    p = next;
  }
  return out;
}

std::string token_text(std::span<const int> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(tokens[i]);
  }
  return out;
}

}  // namespace ropelab
