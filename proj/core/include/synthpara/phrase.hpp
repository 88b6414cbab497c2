#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "synthpara/alignment.hpp"
#include "synthpara/corpus.hpp"
#include "synthpara/random.hpp"

namespace synthpara {

struct PhrasePair {
  Tokens source;
  Tokens target;
  std::uint64_t count = 1;

  friend bool operator==(const PhrasePair&, const PhrasePair&) = default;
};

// Unique (source, target) entries sorted by (joined source, joined target).
struct PhraseTable {
  std::vector<PhrasePair> entries;
  int max_phrase_len = 7;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
};

struct ExtractionOptions {
  int max_phrase_len = 7;
  // Let phrase boundaries absorb unaligned words. When off, only phrases
  // whose first and last word on both sides are aligned are kept.
  bool extend_unaligned = true;

  void validate() const;
};

// Half-open token spans of one consistent phrase pair.
struct PhraseSpan {
  std::uint32_t source_begin = 0;
  std::uint32_t source_end = 0;
  std::uint32_t target_begin = 0;
  std::uint32_t target_end = 0;

  friend auto operator<=>(const PhraseSpan&, const PhraseSpan&) = default;
};

// All consistent span boxes of one sentence pair, sorted. Links must be in
// bounds (checked by extract_phrases).
std::vector<PhraseSpan> extract_spans(std::size_t source_len, std::size_t target_len,
                                      const AlignmentLinks& links,
                                      const ExtractionOptions& options);

PhraseTable extract_phrases(const ParallelCorpus& corpus,
                            const std::vector<AlignmentLinks>& alignments,
                            const ExtractionOptions& options = {});

// TSV `source phrase<TAB>target phrase<TAB>count`.
void write_phrase_table(const PhraseTable& table, const std::filesystem::path& path);
PhraseTable read_phrase_table(const std::filesystem::path& path);

enum class PhraseWeighting { kUniform, kFrequency };

PhraseWeighting parse_phrase_weighting(std::string_view name);

struct PhraseCatConfig {
  LengthDistribution phrase_count_dist{4.0, 1.5, 1, 20};
  PhraseWeighting weighting = PhraseWeighting::kUniform;
  RandomSource rng{0};

  void validate() const;
};

// Indices into PhraseTable::entries, in draw order, for one generated pair.
using PhraseDraws = std::vector<std::size_t>;

// Pairs [first, first + count) of the phrase-cat stream; pair i draws from
// config.rng.substream(i). When draw_log is given, one entry per pair is
// appended.
std::vector<SentencePair> gen_phrase_cat_range(const PhraseTable& table, std::uint64_t first,
                                               std::uint64_t count,
                                               const PhraseCatConfig& config,
                                               std::vector<PhraseDraws>* draw_log = nullptr);

ParallelCorpus gen_phrase_cat(const PhraseTable& table, std::uint64_t num_pairs,
                              const PhraseCatConfig& config,
                              std::vector<PhraseDraws>* draw_log = nullptr);

// Concatenates the drawn entries' sides in draw order.
SentencePair replay_phrase_draws(const PhraseTable& table, const PhraseDraws& draws);

}  // namespace synthpara
