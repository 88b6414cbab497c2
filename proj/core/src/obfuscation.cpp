#include "synthpara/obfuscation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>
#include <vector>

#include "synthpara/error.hpp"

namespace synthpara {
namespace {

bool spelled_from(const std::string& word, const std::string& alphabet, int length) {
  if (static_cast<int>(word.size()) != length) return false;
  return std::all_of(word.begin(), word.end(), [&](char c) {
    return alphabet.find(c) != std::string::npos;
  });
}

std::vector<std::string> types_in_order(const ParallelCorpus& corpus, bool source_side) {
  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  for (const auto& pair : corpus.pairs) {
    for (const auto& word : source_side ? pair.source : pair.target) {
      if (seen.insert(word).second) order.push_back(word);
    }
  }
  return order;
}

void validate_alphabet(const std::string& alphabet, const char* side) {
  if (alphabet.empty()) throw InvalidConfig(std::string(side) + " alphabet is empty");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidConfig(std::string(side) + " alphabet has repeated symbols");
  }
  for (char c : alphabet) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      throw InvalidConfig(std::string(side) + " alphabet contains whitespace");
    }
  }
}

WordMap assign_side(const std::vector<std::string>& words,
                    const std::unordered_set<std::string>& real_words,
                    const std::string& alphabet, int token_length, RandomSource& rng,
                    const char* side) {
  const std::size_t space = token_space(alphabet.size(), token_length);
  std::size_t blocked = 0;
  for (const auto& w : real_words) {
    if (spelled_from(w, alphabet, token_length)) ++blocked;
  }
  if (words.size() > space - blocked) {
    throw Error(std::string(side) + " vocabulary of " + std::to_string(words.size()) +
                " types exceeds the " + std::to_string(space - blocked) +
                " available tokens of length " + std::to_string(token_length) +
                " (alphabet size " + std::to_string(alphabet.size()) + ")");
  }

  WordMap map;
  map.reserve(words.size());
  std::unordered_set<std::string> used;
  used.reserve(words.size());
  std::string token(static_cast<std::size_t>(token_length), ' ');
  for (const auto& word : words) {
    do {
      for (auto& c : token) c = alphabet[rng.uniform_below(alphabet.size())];
    } while (used.count(token) || real_words.count(token));
    used.insert(token);
    map.emplace(word, token);
  }
  return map;
}

const std::string& lookup(const WordMap& map, const std::string& word, const char* side) {
  auto it = map.find(word);
  if (it == map.end()) {
    throw Error(std::string("no ") + side + " obfuscation entry for word '" + word + "'");
  }
  return it->second;
}

}  // namespace

void ObfuscationConfig::validate() const {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw InvalidConfig("obfuscation ratio must be in [0,1]");
  }
}

std::size_t token_space(std::size_t alphabet_size, int length) {
  std::size_t total = 1;
  for (int i = 0; i < length; ++i) {
    if (total > std::numeric_limits<std::size_t>::max() / alphabet_size) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= alphabet_size;
  }
  return total;
}

ObfuscationMap build_obfuscation_map(const ParallelCorpus& corpus, int token_length,
                                     RandomSource rng) {
  ObfuscationMap defaults;
  return build_obfuscation_map(corpus, token_length, rng, defaults.source_alphabet,
                               defaults.target_alphabet);
}

ObfuscationMap build_obfuscation_map(const ParallelCorpus& corpus, int token_length,
                                     RandomSource rng, std::string source_alphabet,
                                     std::string target_alphabet) {
  if (token_length < 1) throw InvalidConfig("token length must be >= 1");
  validate_alphabet(source_alphabet, "source");
  validate_alphabet(target_alphabet, "target");

  const auto source_words = types_in_order(corpus, true);
  const auto target_words = types_in_order(corpus, false);
  std::unordered_set<std::string> real_words(source_words.begin(), source_words.end());
  real_words.insert(target_words.begin(), target_words.end());

  ObfuscationMap map;
  map.token_length = token_length;
  map.source_alphabet = std::move(source_alphabet);
  map.target_alphabet = std::move(target_alphabet);
  map.source_map = assign_side(source_words, real_words, map.source_alphabet, token_length,
                               rng, "source");
  map.target_map = assign_side(target_words, real_words, map.target_alphabet, token_length,
                               rng, "target");
  return map;
}

ParallelCorpus obfuscate_corpus(const ParallelCorpus& corpus, const ObfuscationMap& map,
                                const ObfuscationConfig& config) {
  config.validate();
  ParallelCorpus out;
  out.provenance = corpus.provenance;
  out.pairs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    RandomSource rng = config.rng.substream(i);
    const auto& in = corpus.pairs[i];
    SentencePair pair;
    pair.source.reserve(in.source.size());
    pair.target.reserve(in.target.size());
    for (const auto& word : in.source) {
      const auto& token = lookup(map.source_map, word, "source");
      pair.source.push_back(rng.bernoulli(config.ratio) ? token : word);
    }
    for (const auto& word : in.target) {
      const auto& token = lookup(map.target_map, word, "target");
      pair.target.push_back(rng.bernoulli(config.ratio) ? token : word);
    }
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

void write_word_map(const WordMap& map, const std::filesystem::path& path) {
  std::vector<const WordMap::value_type*> entries;
  entries.reserve(map.size());
  for (const auto& kv : map) entries.push_back(&kv);
  std::sort(entries.begin(), entries.end(),
            [](auto* a, auto* b) { return a->first < b->first; });
  std::string text;
  for (const auto* kv : entries) {
    text += kv->first;
    text.push_back('\t');
    text += kv->second;
    text.push_back('\n');
  }
  write_text(path, text);
}

WordMap read_word_map(const std::filesystem::path& path) {
  WordMap map;
  std::size_t line_no = 0;
  for (const auto& fields : read_sentences(path, true)) {
    ++line_no;
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": expected `word<TAB>token`");
    }
    if (!map.emplace(fields[0], fields[1]).second) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": duplicate word '" +
                  fields[0] + "'");
    }
  }
  return map;
}

}  // namespace synthpara
