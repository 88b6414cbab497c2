#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synthpara/corpus.hpp"
#include "synthpara/random.hpp"

namespace synthpara {

std::string to_upper_ascii(std::string_view word);
std::string to_lower_ascii(std::string_view word);

// Paired lowercase/uppercase synthetic tokens: target[i] == upper(source[i]).
struct SyntheticVocabulary {
  int token_length = 3;
  std::vector<std::string> source;
  std::vector<std::string> target;

  std::size_t size() const noexcept { return source.size(); }

  // size == 0 selects every lowercase string of token_length letters in
  // lexicographic order (26^3 = 17576 by default). A smaller size keeps a
  // seeded random subset, still in lexicographic order.
  static SyntheticVocabulary make(int token_length = 3, std::size_t size = 0,
                                  std::uint64_t seed = 0);
};

struct CaseMapConfig {
  double d_s = 0.0;
  double d_t = 0.0;
  LengthDistribution length_dist;
  RandomSource rng{0};

  void validate() const;
};

// Binary bracketing over a source sentence, stored in pre-order
// (nodes[0] is the root). A leaf covers exactly one token position.
struct DerivationTree {
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    bool swapped = false;

    bool is_leaf() const noexcept { return left < 0; }
  };
  std::vector<Node> nodes;

  std::size_t leaf_count() const noexcept { return nodes.empty() ? 0 : nodes.front().end; }
  std::size_t internal_count() const noexcept;
  std::size_t swapped_count() const noexcept;
};

struct PbTreesConfig {
  double r = 0.15;
  LengthDistribution length_dist;
  RandomSource rng{0};
  bool emit_derivations = false;

  void validate() const;
};

struct PbTreeSample {
  SentencePair pair;
  DerivationTree tree;
};

// A derivation as stored in a sidecar line: tree plus its leaf tokens.
struct Derivation {
  DerivationTree tree;
  Tokens leaves;
};

// Every pair is drawn from rng.substream(i) for its global index i, so any
// split into ranges concatenates to the same corpus.
std::vector<SentencePair> gen_identity_range(const SyntheticVocabulary& vocab,
                                             std::uint64_t first, std::uint64_t count,
                                             const LengthDistribution& length_dist,
                                             const RandomSource& rng);
ParallelCorpus gen_identity(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                            const LengthDistribution& length_dist, const RandomSource& rng);

// underlying_log, when given, receives the pre-deletion vocabulary indices
// of each emitted pair.
std::vector<SentencePair> gen_case_map_range(
    const SyntheticVocabulary& vocab, std::uint64_t first, std::uint64_t count,
    const CaseMapConfig& config, std::vector<std::vector<std::uint32_t>>* underlying_log = nullptr);
ParallelCorpus gen_case_map(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                            const CaseMapConfig& config,
                            std::vector<std::vector<std::uint32_t>>* underlying_log = nullptr);

// Uniform split point among the length-1 inner boundaries, recursively;
// splits are drawn in pre-order.
DerivationTree build_random_tree(std::size_t length, RandomSource& rng);

// Marks each internal node swapped with probability r (pre-order draws) and
// emits (lowercase source, permuted uppercase target).
PbTreeSample permute_and_emit(DerivationTree tree, std::span<const std::uint32_t> token_ids,
                              const SyntheticVocabulary& vocab, double r, RandomSource& rng);

struct PbTreesBatch {
  std::vector<SentencePair> pairs;
  std::vector<DerivationTree> derivations;  // filled iff emit_derivations
};

PbTreesBatch gen_pb_trees_range(const SyntheticVocabulary& vocab, std::uint64_t first,
                                std::uint64_t count, const PbTreesConfig& config);
PbTreesBatch gen_pb_trees(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                          const PbTreesConfig& config);

// Source positions in target order: in-order traversal, right child first
// at swapped nodes.
std::vector<std::uint32_t> target_order(const DerivationTree& tree);

// Uppercased target implied by the tree's swap flags.
Tokens replay_derivation(const DerivationTree& tree, const Tokens& source);

// Sidecar s-expression, e.g. `( jtx ( ( urs (* ktp ( hme nmc ) ) ) pep ) )`.
std::string format_derivation(const DerivationTree& tree, const Tokens& source);
Derivation parse_derivation(std::string_view text);

// True iff the target can be read as the source's uppercase tokens with
// every subtree landing on a contiguous target range. Swap flags are not
// consulted. Throws Error when the derivation's leaves are not the pair's
// source sentence.
bool check_span_contiguity(const SentencePair& pair, const Derivation& derivation);

}  // namespace synthpara
