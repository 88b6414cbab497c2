#include "synthpara/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "synthpara/error.hpp"

namespace synthpara {
namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("read failure on '" + path.string() + "'");
  return std::move(buf).str();
}

std::string key_of(const SentencePair& pair) {
  std::string key = join(pair.source);
  key.push_back('\t');
  append_joined(key, pair.target);
  return key;
}

}  // namespace

void LengthDistribution::validate(std::string_view what) const {
  const std::string name(what);
  if (!std::isfinite(mean) || mean <= 0.0)
    throw InvalidConfig(name + ": mean must be > 0");
  if (!std::isfinite(stddev) || stddev < 0.0)
    throw InvalidConfig(name + ": stddev must be >= 0");
  if (min_len < 1) throw InvalidConfig(name + ": min length must be >= 1");
  if (max_len < min_len)
    throw InvalidConfig(name + ": max length must be >= min length");
}

Tokens tokenize(std::string_view line) {
  Tokens tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

void append_joined(std::string& out, const Tokens& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
}

std::string join(const Tokens& tokens) {
  std::string out;
  append_joined(out, tokens);
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    lines.emplace_back(text, pos, eol - pos);
    pos = eol + 1;
  }
  return lines;
}

std::vector<Tokens> read_sentences(const std::filesystem::path& path,
                                   bool allow_empty) {
  const std::string text = slurp(path);
  std::vector<Tokens> lines;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    ++line_no;
    Tokens tokens = tokenize(std::string_view(text).substr(pos, eol - pos));
    if (tokens.empty() && !allow_empty) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": empty line");
    }
    lines.push_back(std::move(tokens));
    pos = eol + 1;
  }
  return lines;
}

ParallelCorpus read_parallel(const std::filesystem::path& source_path,
                             const std::filesystem::path& target_path) {
  auto sources = read_sentences(source_path);
  auto targets = read_sentences(target_path);
  if (sources.size() != targets.size()) {
    throw Error("line-count mismatch: '" + source_path.string() + "' has " +
                std::to_string(sources.size()) + " lines, '" +
                target_path.string() + "' has " + std::to_string(targets.size()));
  }
  ParallelCorpus corpus;
  corpus.provenance = source_path.string() + " | " + target_path.string();
  corpus.pairs.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    corpus.pairs.push_back({std::move(sources[i]), std::move(targets[i])});
  }
  return corpus;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error("write failure on '" + path.string() + "'");
}

void serialize_pairs(const std::vector<SentencePair>& pairs,
                     std::string& source_out, std::string& target_out) {
  for (const auto& pair : pairs) {
    append_joined(source_out, pair.source);
    source_out.push_back('\n');
    append_joined(target_out, pair.target);
    target_out.push_back('\n');
  }
}

void write_parallel(const ParallelCorpus& corpus,
                    const std::filesystem::path& source_path,
                    const std::filesystem::path& target_path) {
  std::string src;
  std::string trg;
  serialize_pairs(corpus.pairs, src, trg);
  write_text(source_path, src);
  write_text(target_path, trg);
}

ParallelCorpus filter_corpus(const ParallelCorpus& corpus,
                             double max_length_ratio, bool dedup) {
  if (std::isnan(max_length_ratio) || max_length_ratio < 1.0) {
    throw InvalidConfig("max length ratio must be >= 1");
  }
  ParallelCorpus out;
  out.provenance = corpus.provenance;
  std::unordered_set<std::string> seen;
  for (const auto& pair : corpus.pairs) {
    const std::size_t shorter = std::min(pair.source.size(), pair.target.size());
    const std::size_t longer = std::max(pair.source.size(), pair.target.size());
    const double ratio = shorter == 0
                             ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(longer) / static_cast<double>(shorter);
    if (ratio > max_length_ratio) continue;
    if (dedup && !seen.insert(key_of(pair)).second) continue;
    out.pairs.push_back(pair);
  }
  return out;
}

int sample_length(const LengthDistribution& dist, RandomSource& rng) {
  double x = dist.mean + dist.stddev * rng.normal();
  x = std::clamp(x, static_cast<double>(dist.min_len), static_cast<double>(dist.max_len));
  return static_cast<int>(std::lround(x));
}

}  // namespace synthpara
