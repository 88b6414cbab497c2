#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>

#include "synthpara/corpus.hpp"
#include "synthpara/random.hpp"

namespace synthpara {

using WordMap = std::unordered_map<std::string, std::string>;

// One-to-one word -> nonsense-token mappings, one per corpus side.
struct ObfuscationMap {
  WordMap source_map;
  WordMap target_map;
  int token_length = 5;
  std::string source_alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::string target_alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
};

struct ObfuscationConfig {
  double ratio = 0.0;
  RandomSource rng{0};

  void validate() const;
};

// Number of distinct strings of `length` symbols over an alphabet of
// `alphabet_size`, saturating at SIZE_MAX.
std::size_t token_space(std::size_t alphabet_size, int length);

// Assigns every distinct word on each side a distinct random token of
// `token_length` alphabet symbols. Tokens never coincide with a real word
// from either side of the corpus. Words are visited in first-occurrence
// order (sentence-major), so the result is a function of (corpus, rng).
ObfuscationMap build_obfuscation_map(const ParallelCorpus& corpus, int token_length,
                                     RandomSource rng);
ObfuscationMap build_obfuscation_map(const ParallelCorpus& corpus, int token_length,
                                     RandomSource rng, std::string source_alphabet,
                                     std::string target_alphabet);

// Replaces each token occurrence by its mapped token with probability
// config.ratio. Sentence i draws from config.rng.substream(i), tokens in
// order, source side before target side.
ParallelCorpus obfuscate_corpus(const ParallelCorpus& corpus, const ObfuscationMap& map,
                                const ObfuscationConfig& config);

// TSV persistence: `word<TAB>token` per line, sorted by word bytes.
void write_word_map(const WordMap& map, const std::filesystem::path& path);
WordMap read_word_map(const std::filesystem::path& path);

}  // namespace synthpara
