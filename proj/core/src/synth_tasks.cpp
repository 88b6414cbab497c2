#include "synthpara/synth_tasks.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "synthpara/error.hpp"
#include "synthpara/obfuscation.hpp"

namespace synthpara {
namespace {

void check_probability(double p, const char* name, bool allow_one) {
  if (!(p >= 0.0 && (allow_one ? p <= 1.0 : p < 1.0))) {
    throw InvalidConfig(std::string(name) + " must be in " + (allow_one ? "[0,1]" : "[0,1)"));
  }
}

void check_vocab(const SyntheticVocabulary& vocab) {
  if (vocab.size() == 0) throw InvalidConfig("synthetic vocabulary is empty");
}

void draw_tokens(std::size_t vocab_size, int length, RandomSource& rng,
                 std::vector<std::uint32_t>& ids) {
  ids.resize(static_cast<std::size_t>(length));
  for (auto& id : ids) id = static_cast<std::uint32_t>(rng.uniform_below(vocab_size));
}

}  // namespace

std::string to_upper_ascii(std::string_view word) {
  std::string out(word);
  for (auto& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string to_lower_ascii(std::string_view word) {
  std::string out(word);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

SyntheticVocabulary SyntheticVocabulary::make(int token_length, std::size_t size,
                                              std::uint64_t seed) {
  if (token_length < 1 || token_length > 5) {
    throw InvalidConfig("synthetic token length must be in [1,5]");
  }
  const std::size_t full = token_space(26, token_length);
  if (size > full) {
    throw InvalidConfig("synthetic vocabulary size " + std::to_string(size) + " exceeds 26^" +
                        std::to_string(token_length) + " = " + std::to_string(full));
  }
  std::vector<std::uint32_t> codes(full);
  std::iota(codes.begin(), codes.end(), 0u);
  if (size != 0 && size < full) {
    RandomSource rng(seed, 0x766f636162ULL);
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(codes[i], codes[i + rng.uniform_below(full - i)]);
    }
    codes.resize(size);
    std::sort(codes.begin(), codes.end());
  }

  SyntheticVocabulary vocab;
  vocab.token_length = token_length;
  vocab.source.reserve(codes.size());
  vocab.target.reserve(codes.size());
  std::string word(static_cast<std::size_t>(token_length), 'a');
  for (auto code : codes) {
    for (int k = token_length - 1; k >= 0; --k) {
      word[static_cast<std::size_t>(k)] = static_cast<char>('a' + code % 26);
      code /= 26;
    }
    vocab.source.push_back(word);
    vocab.target.push_back(to_upper_ascii(word));
  }
  return vocab;
}

void CaseMapConfig::validate() const {
  // A side deleted with probability 1 can never be resampled to non-empty.
  check_probability(d_s, "source deletion probability d_s", false);
  check_probability(d_t, "target deletion probability d_t", false);
  length_dist.validate();
}

void PbTreesConfig::validate() const {
  check_probability(r, "swap probability r", true);
  length_dist.validate();
}

std::size_t DerivationTree::internal_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return !n.is_leaf(); }));
}

std::size_t DerivationTree::swapped_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.swapped; }));
}

// --- identity ----------------------------------------------------------------

std::vector<SentencePair> gen_identity_range(const SyntheticVocabulary& vocab,
                                             std::uint64_t first, std::uint64_t count,
                                             const LengthDistribution& length_dist,
                                             const RandomSource& rng) {
  check_vocab(vocab);
  length_dist.validate();
  std::vector<SentencePair> out;
  out.reserve(count);
  std::vector<std::uint32_t> ids;
  for (std::uint64_t i = first; i < first + count; ++i) {
    RandomSource local = rng.substream(i);
    draw_tokens(vocab.size(), sample_length(length_dist, local), local, ids);
    SentencePair pair;
    pair.source.reserve(ids.size());
    for (const auto id : ids) pair.source.push_back(vocab.source[id]);
    pair.target = pair.source;
    out.push_back(std::move(pair));
  }
  return out;
}

ParallelCorpus gen_identity(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                            const LengthDistribution& length_dist, const RandomSource& rng) {
  ParallelCorpus corpus;
  corpus.provenance = "identity";
  corpus.pairs = gen_identity_range(vocab, 0, num_pairs, length_dist, rng);
  return corpus;
}

// --- case-map ------------------------------------------------------------------

std::vector<SentencePair> gen_case_map_range(
    const SyntheticVocabulary& vocab, std::uint64_t first, std::uint64_t count,
    const CaseMapConfig& config, std::vector<std::vector<std::uint32_t>>* underlying_log) {
  check_vocab(vocab);
  config.validate();
  std::vector<SentencePair> out;
  out.reserve(count);
  std::vector<std::uint32_t> ids;
  for (std::uint64_t i = first; i < first + count; ++i) {
    RandomSource local = config.rng.substream(i);
    SentencePair pair;
    do {
      pair.source.clear();
      pair.target.clear();
      draw_tokens(vocab.size(), sample_length(config.length_dist, local), local, ids);
      for (const auto id : ids) {
        if (!local.bernoulli(config.d_s)) pair.source.push_back(vocab.source[id]);
        if (!local.bernoulli(config.d_t)) pair.target.push_back(vocab.target[id]);
      }
    } while (pair.source.empty() || pair.target.empty());
    out.push_back(std::move(pair));
    if (underlying_log) underlying_log->push_back(ids);
  }
  return out;
}

ParallelCorpus gen_case_map(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                            const CaseMapConfig& config,
                            std::vector<std::vector<std::uint32_t>>* underlying_log) {
  ParallelCorpus corpus;
  corpus.provenance = "case-map";
  corpus.pairs = gen_case_map_range(vocab, 0, num_pairs, config, underlying_log);
  return corpus;
}

// --- pb-trees ------------------------------------------------------------------

DerivationTree build_random_tree(std::size_t length, RandomSource& rng) {
  if (length == 0) throw InvalidConfig("tree length must be >= 1");
  DerivationTree tree;
  tree.nodes.reserve(2 * length - 1);

  struct Pending {
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t parent;
    bool right;
  };
  std::vector<Pending> stack;
  stack.push_back({0, static_cast<std::uint32_t>(length), -1, false});
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const auto index = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back({p.begin, p.end, -1, -1, false});
    if (p.parent >= 0) {
      auto& parent = tree.nodes[static_cast<std::size_t>(p.parent)];
      (p.right ? parent.right : parent.left) = index;
    }
    const std::uint32_t len = p.end - p.begin;
    if (len == 1) continue;
    const auto split = p.begin + 1 + static_cast<std::uint32_t>(rng.uniform_below(len - 1));
    stack.push_back({split, p.end, index, true});
    stack.push_back({p.begin, split, index, false});
  }
  return tree;
}

std::vector<std::uint32_t> target_order(const DerivationTree& tree) {
  std::vector<std::uint32_t> order;
  if (tree.nodes.empty()) return order;
  order.reserve(tree.leaf_count());
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto& node = tree.nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (node.is_leaf()) {
      order.push_back(node.begin);
      continue;
    }
    const auto first = node.swapped ? node.right : node.left;
    const auto second = node.swapped ? node.left : node.right;
    stack.push_back(second);
    stack.push_back(first);
  }
  return order;
}

PbTreeSample permute_and_emit(DerivationTree tree, std::span<const std::uint32_t> token_ids,
                              const SyntheticVocabulary& vocab, double r, RandomSource& rng) {
  if (tree.leaf_count() != token_ids.size()) {
    throw Error("derivation covers " + std::to_string(tree.leaf_count()) + " tokens, sentence has " +
                std::to_string(token_ids.size()));
  }
  for (auto& node : tree.nodes) {
    if (!node.is_leaf()) node.swapped = rng.bernoulli(r);
  }
  PbTreeSample sample;
  sample.pair.source.reserve(token_ids.size());
  sample.pair.target.reserve(token_ids.size());
  for (const auto id : token_ids) sample.pair.source.push_back(vocab.source[id]);
  for (const auto pos : target_order(tree)) sample.pair.target.push_back(vocab.target[token_ids[pos]]);
  sample.tree = std::move(tree);
  return sample;
}

PbTreesBatch gen_pb_trees_range(const SyntheticVocabulary& vocab, std::uint64_t first,
                                std::uint64_t count, const PbTreesConfig& config) {
  check_vocab(vocab);
  config.validate();
  PbTreesBatch batch;
  batch.pairs.reserve(count);
  if (config.emit_derivations) batch.derivations.reserve(count);
  std::vector<std::uint32_t> ids;
  for (std::uint64_t i = first; i < first + count; ++i) {
    RandomSource local = config.rng.substream(i);
    draw_tokens(vocab.size(), sample_length(config.length_dist, local), local, ids);
    auto tree = build_random_tree(ids.size(), local);
    auto sample = permute_and_emit(std::move(tree), ids, vocab, config.r, local);
    batch.pairs.push_back(std::move(sample.pair));
    if (config.emit_derivations) batch.derivations.push_back(std::move(sample.tree));
  }
  return batch;
}

PbTreesBatch gen_pb_trees(const SyntheticVocabulary& vocab, std::uint64_t num_pairs,
                          const PbTreesConfig& config) {
  return gen_pb_trees_range(vocab, 0, num_pairs, config);
}

Tokens replay_derivation(const DerivationTree& tree, const Tokens& source) {
  if (tree.leaf_count() != source.size()) {
    throw Error("derivation covers " + std::to_string(tree.leaf_count()) + " tokens, sentence has " +
                std::to_string(source.size()));
  }
  Tokens target;
  target.reserve(source.size());
  for (const auto pos : target_order(tree)) target.push_back(to_upper_ascii(source[pos]));
  return target;
}

// --- sidecar format -------------------------------------------------------------

std::string format_derivation(const DerivationTree& tree, const Tokens& source) {
  if (tree.leaf_count() != source.size()) {
    throw Error("derivation covers " + std::to_string(tree.leaf_count()) + " tokens, sentence has " +
                std::to_string(source.size()));
  }
  std::string out;
  // Negative entries close an internal node.
  std::vector<std::int32_t> stack{0};
  bool first = true;
  auto sep = [&] {
    if (!first) out.push_back(' ');
    first = false;
  };
  while (!stack.empty()) {
    const auto idx = stack.back();
    stack.pop_back();
    sep();
    if (idx < 0) {
      out.push_back(')');
      continue;
    }
    const auto& node = tree.nodes[static_cast<std::size_t>(idx)];
    if (node.is_leaf()) {
      out += source[node.begin];
      continue;
    }
    out += node.swapped ? "(*" : "(";
    stack.push_back(-1);
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return out;
}

Derivation parse_derivation(std::string_view text) {
  const Tokens tokens = tokenize(text);
  Derivation d;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error("malformed derivation at token " + std::to_string(pos + 1) + ": " + why);
  };

  // Recursive descent with an explicit stack of open internal nodes.
  struct Open {
    std::int32_t index;
    int children;
  };
  std::vector<Open> open;
  bool root_done = false;
  auto attach = [&](std::int32_t child) {
    if (open.empty()) {
      if (root_done) throw fail("more than one root");
      root_done = true;
      return;
    }
    auto& top = open.back();
    auto& parent = d.tree.nodes[static_cast<std::size_t>(top.index)];
    if (top.children == 0) {
      parent.left = child;
    } else if (top.children == 1) {
      parent.right = child;
    } else {
      throw fail("node with more than two children");
    }
    ++top.children;
  };

  for (; pos < tokens.size(); ++pos) {
    const auto& tok = tokens[pos];
    if (tok == "(" || tok == "(*") {
      const auto index = static_cast<std::int32_t>(d.tree.nodes.size());
      DerivationTree::Node node;
      node.begin = static_cast<std::uint32_t>(d.leaves.size());
      node.swapped = tok == "(*";
      d.tree.nodes.push_back(node);
      attach(index);
      open.push_back({index, 0});
    } else if (tok == ")") {
      if (open.empty()) throw fail("unbalanced ')'");
      if (open.back().children != 2) throw fail("internal node needs exactly two children");
      auto& node = d.tree.nodes[static_cast<std::size_t>(open.back().index)];
      node.end = static_cast<std::uint32_t>(d.leaves.size());
      open.pop_back();
    } else {
      const auto index = static_cast<std::int32_t>(d.tree.nodes.size());
      const auto at = static_cast<std::uint32_t>(d.leaves.size());
      d.tree.nodes.push_back({at, at + 1, -1, -1, false});
      d.leaves.push_back(tok);
      attach(index);
    }
  }
  if (!open.empty()) throw fail("unclosed '('");
  if (!root_done) throw Error("malformed derivation: empty");
  return d;
}

bool check_span_contiguity(const SentencePair& pair, const Derivation& derivation) {
  const auto& tree = derivation.tree;
  if (derivation.leaves != pair.source || tree.leaf_count() != pair.source.size()) {
    throw Error("derivation leaves do not spell the pair's source sentence");
  }
  const std::size_t n = pair.source.size();
  if (pair.target.size() != n) return false;

  std::vector<std::string> upper;
  upper.reserve(n);
  for (const auto& w : pair.source) upper.push_back(to_upper_ascii(w));

  // fits(node, start): the node's leaves can occupy target[start, start+size)
  // with each child on a contiguous sub-range.
  std::unordered_map<std::uint64_t, bool> memo;
  auto fits = [&](auto&& self, std::int32_t idx, std::uint32_t start) -> bool {
    const auto& node = tree.nodes[static_cast<std::size_t>(idx)];
    if (node.is_leaf()) return pair.target[start] == upper[node.begin];
    const std::uint64_t key = static_cast<std::uint64_t>(idx) * (n + 1) + start;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& left = tree.nodes[static_cast<std::size_t>(node.left)];
    const auto& right = tree.nodes[static_cast<std::size_t>(node.right)];
    const std::uint32_t left_size = left.end - left.begin;
    const std::uint32_t right_size = right.end - right.begin;
    const bool ok =
        (self(self, node.left, start) && self(self, node.right, start + left_size)) ||
        (self(self, node.right, start) && self(self, node.left, start + right_size));
    memo.emplace(key, ok);
    return ok;
  };
  return fits(fits, 0, 0);
}

}  // namespace synthpara
