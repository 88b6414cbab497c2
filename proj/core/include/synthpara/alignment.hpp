#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synthpara/corpus.hpp"

namespace synthpara {

// (source index, target index).
struct Link {
  std::uint32_t source = 0;
  std::uint32_t target = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

// Sorted, duplicate-free link set for one sentence pair.
using AlignmentLinks = std::vector<Link>;

void normalize_links(AlignmentLinks& links);

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
using WordIndex = std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>;

// Lexical translation table t(e | f) with a distinguished NULL source word.
class TranslationTable {
 public:
  static constexpr std::string_view kNullWord = "<NULL>";
  static constexpr std::uint32_t kNullId = 0;
  static constexpr std::uint32_t kUnknown = UINT32_MAX;

  TranslationTable();

  std::uint32_t source_id(std::string_view f) const;
  std::uint32_t target_id(std::string_view e) const;
  std::uint32_t add_source(std::string_view f);
  std::uint32_t add_target(std::string_view e);

  const std::string& source_word(std::uint32_t id) const { return source_words_[id]; }
  const std::string& target_word(std::uint32_t id) const { return target_words_[id]; }
  std::size_t source_vocab_size() const noexcept { return source_words_.size(); }
  std::size_t target_vocab_size() const noexcept { return target_words_.size(); }
  std::size_t entry_count() const noexcept { return probs_.size(); }

  // 0 when the pair is absent. Pass kNullWord for the NULL source.
  double prob(std::string_view f, std::string_view e) const;
  double prob(std::uint32_t f, std::uint32_t e) const;
  bool contains(std::uint32_t f, std::uint32_t e) const;
  void set(std::uint32_t f, std::uint32_t e, double p);

  // max over f of |sum_e t(e|f) - 1|, over source words with any entry.
  double max_normalization_error() const;

  static std::uint64_t key(std::uint32_t f, std::uint32_t e) noexcept {
    return (static_cast<std::uint64_t>(f) << 32) | e;
  }
  const std::unordered_map<std::uint64_t, double>& raw() const noexcept { return probs_; }
  std::unordered_map<std::uint64_t, double>& raw() noexcept { return probs_; }

 private:
  std::vector<std::string> source_words_;
  std::vector<std::string> target_words_;
  WordIndex source_index_;
  WordIndex target_index_;
  std::unordered_map<std::uint64_t, double> probs_;
};

// IBM Model 1 trainer for t(target word | source word).
class Ibm1Trainer {
 public:
  explicit Ibm1Trainer(const ParallelCorpus& corpus);

  // One EM iteration. Returns the corpus log-likelihood under the table as
  // it was before the update.
  double em_step();

  // log P(targets | sources) up to the length-model constant:
  //   sum_pairs sum_j log( sum_{i in NULL,0..l-1} t(e_j|f_i) / (l+1) ).
  double log_likelihood() const;

  int iterations() const noexcept { return iterations_; }
  const TranslationTable& table() const noexcept { return table_; }

 private:
  struct EncodedPair {
    std::vector<std::uint32_t> source;  // without NULL
    std::vector<std::uint32_t> target;
  };
  TranslationTable table_;
  std::vector<EncodedPair> pairs_;
  int iterations_ = 0;
};

TranslationTable train_ibm1(const ParallelCorpus& corpus, int iterations);

// Swaps source and target of every pair.
ParallelCorpus reversed(const ParallelCorpus& corpus);

enum class Direction { kForward, kReverse };

// Unseen (f, e) pairs score this value in Viterbi alignment.
inline constexpr double kFloorProbability = 1e-7;

// Forward: `table` is t(target|source); each target word links to its best
// source word. Reverse: `table` is t(source|target) (trained on the reversed
// corpus); each source word links to its best target word. Links are always
// reported as (source index, target index). Ties go to the smallest index;
// NULL wins only when strictly better than every real word, and a NULL
// choice emits no link.
AlignmentLinks viterbi_align(const SentencePair& pair, const TranslationTable& table,
                             Direction direction);

enum class Symmetrization { kIntersection, kUnion, kGrowDiagFinalAnd };

Symmetrization parse_symmetrization(std::string_view name);
std::string_view to_string(Symmetrization heuristic);

AlignmentLinks symmetrize(const AlignmentLinks& forward, const AlignmentLinks& reverse,
                          Symmetrization heuristic);

// Pharaoh format: `i-j` tokens separated by spaces.
std::string format_pharaoh(const AlignmentLinks& links);
AlignmentLinks parse_pharaoh(std::string_view line);
std::vector<AlignmentLinks> read_alignments(const std::filesystem::path& path);
void write_alignments(const std::vector<AlignmentLinks>& alignments,
                      const std::filesystem::path& path);

// TSV `f<TAB>e<TAB>prob`, sorted by (f, e); probabilities printed with 17
// significant digits so a reload is lossless.
void write_table(const TranslationTable& table, const std::filesystem::path& path);
TranslationTable read_table(const std::filesystem::path& path);

}  // namespace synthpara
