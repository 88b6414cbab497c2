#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "synthpara/random.hpp"

namespace synthpara {

using Tokens = std::vector<std::string>;

struct SentencePair {
  Tokens source;
  Tokens target;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;
  std::string provenance;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
};

inline bool operator==(const ParallelCorpus& a, const ParallelCorpus& b) {
  return a.pairs == b.pairs;
}

// Normal(mean, stddev), rounded to the nearest integer and clamped to
// [min_len, max_len].
struct LengthDistribution {
  double mean = 9.0;
  double stddev = 3.0;
  int min_len = 1;
  int max_len = 64;

  // Throws InvalidConfig naming the offending field.
  void validate(std::string_view what = "length distribution") const;
};

// Splits on ASCII whitespace; a token is a maximal run of other bytes.
Tokens tokenize(std::string_view line);

// Single-space join.
std::string join(const Tokens& tokens);
void append_joined(std::string& out, const Tokens& tokens);

// Raw lines without their LF terminators. A final unterminated line counts.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Reads one whitespace-tokenized sentence per line. Empty lines are an error
// unless allow_empty is set, in which case they become empty token lists.
std::vector<Tokens> read_sentences(const std::filesystem::path& path,
                                   bool allow_empty = false);

ParallelCorpus read_parallel(const std::filesystem::path& source_path,
                             const std::filesystem::path& target_path);

void write_parallel(const ParallelCorpus& corpus,
                    const std::filesystem::path& source_path,
                    const std::filesystem::path& target_path);

void write_text(const std::filesystem::path& path, std::string_view text);

// Appends both sides of the pairs, one LF-terminated line each.
void serialize_pairs(const std::vector<SentencePair>& pairs,
                     std::string& source_out, std::string& target_out);

// Drops exact (source, target) duplicates after their first occurrence when
// dedup is set, and pairs whose longer/shorter token-count ratio exceeds
// max_length_ratio. Relative order is preserved.
ParallelCorpus filter_corpus(const ParallelCorpus& corpus,
                             double max_length_ratio, bool dedup);

int sample_length(const LengthDistribution& dist, RandomSource& rng);

}  // namespace synthpara
