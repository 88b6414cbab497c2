#include "synthpara/phrase.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>

#include "synthpara/error.hpp"

namespace synthpara {

void ExtractionOptions::validate() const {
  if (max_phrase_len < 1) throw InvalidConfig("max phrase length must be >= 1");
}

std::vector<PhraseSpan> extract_spans(std::size_t source_len, std::size_t target_len,
                                      const AlignmentLinks& links,
                                      const ExtractionOptions& options) {
  const auto max_len = static_cast<std::size_t>(options.max_phrase_len);
  std::vector<int> source_fertility(source_len, 0);
  std::vector<std::vector<std::uint32_t>> aligned_to_target(target_len);
  for (const auto& l : links) {
    ++source_fertility[l.source];
    aligned_to_target[l.target].push_back(l.source);
  }

  std::vector<PhraseSpan> spans;
  std::vector<int> remaining;
  for (std::size_t len_t = 1; len_t <= max_len && len_t <= target_len; ++len_t) {
    for (std::size_t start_t = 0; start_t + len_t <= target_len; ++start_t) {
      const std::size_t end_t = start_t + len_t - 1;
      if (!options.extend_unaligned &&
          (aligned_to_target[start_t].empty() || aligned_to_target[end_t].empty())) {
        continue;
      }

      // Source projection of the target span.
      std::size_t min_s = source_len;
      std::size_t max_s = 0;
      remaining = source_fertility;
      for (std::size_t t = start_t; t <= end_t; ++t) {
        for (const auto s : aligned_to_target[t]) {
          min_s = std::min<std::size_t>(min_s, s);
          max_s = std::max<std::size_t>(max_s, s);
          --remaining[s];
        }
      }
      if (min_s == source_len) continue;  // no link inside
      if (max_s - min_s + 1 > max_len) continue;

      // A projected source word must not also link outside the target span.
      bool consistent = true;
      for (std::size_t s = min_s; s <= max_s && consistent; ++s) {
        if (remaining[s] > 0) consistent = false;
      }
      if (!consistent) continue;

      auto emit = [&](std::size_t sb, std::size_t se) {
        spans.push_back({static_cast<std::uint32_t>(sb), static_cast<std::uint32_t>(se + 1),
                         static_cast<std::uint32_t>(start_t),
                         static_cast<std::uint32_t>(end_t + 1)});
      };
      if (!options.extend_unaligned) {
        emit(min_s, max_s);
        continue;
      }
      // Grow left, then right, over unaligned source words.
      for (std::size_t sb = min_s;; --sb) {
        if (sb != min_s && source_fertility[sb] != 0) break;
        if (max_s - sb + 1 > max_len) break;
        for (std::size_t se = max_s; se < source_len; ++se) {
          if (se != max_s && source_fertility[se] != 0) break;
          if (se - sb + 1 > max_len) break;
          emit(sb, se);
        }
        if (sb == 0) break;
      }
    }
  }
  std::sort(spans.begin(), spans.end());
  return spans;
}

PhraseTable extract_phrases(const ParallelCorpus& corpus,
                            const std::vector<AlignmentLinks>& alignments,
                            const ExtractionOptions& options) {
  options.validate();
  if (alignments.size() != corpus.size()) {
    throw Error("alignment count " + std::to_string(alignments.size()) +
                " does not match corpus size " + std::to_string(corpus.size()));
  }
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& pair = corpus.pairs[k];
    for (const auto& l : alignments[k]) {
      if (l.source >= pair.source.size() || l.target >= pair.target.size()) {
        throw Error("pair " + std::to_string(k) + ": alignment link " +
                    std::to_string(l.source) + "-" + std::to_string(l.target) +
                    " is outside a " + std::to_string(pair.source.size()) + "x" +
                    std::to_string(pair.target.size()) + " sentence pair");
      }
    }
    AlignmentLinks links = alignments[k];
    normalize_links(links);
    for (const auto& span : extract_spans(pair.source.size(), pair.target.size(), links, options)) {
      Tokens src(pair.source.begin() + span.source_begin, pair.source.begin() + span.source_end);
      Tokens trg(pair.target.begin() + span.target_begin, pair.target.begin() + span.target_end);
      ++counts[{join(src), join(trg)}];
    }
  }

  PhraseTable table;
  table.max_phrase_len = options.max_phrase_len;
  table.entries.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    table.entries.push_back({tokenize(key.first), tokenize(key.second), count});
  }
  return table;
}

void write_phrase_table(const PhraseTable& table, const std::filesystem::path& path) {
  std::string text;
  for (const auto& entry : table.entries) {
    append_joined(text, entry.source);
    text.push_back('\t');
    append_joined(text, entry.target);
    text.push_back('\t');
    text += std::to_string(entry.count);
    text.push_back('\n');
  }
  write_text(path, text);
}

PhraseTable read_phrase_table(const std::filesystem::path& path) {
  PhraseTable table;
  table.max_phrase_len = 0;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw Error(where + "expected source<TAB>target<TAB>count");
    PhrasePair entry;
    entry.source = tokenize(std::string_view(line).substr(0, t1));
    entry.target = tokenize(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
    const char* begin = line.data() + t2 + 1;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, entry.count);
    if (ec != std::errc() || ptr != end || entry.count == 0) throw Error(where + "bad count");
    if (entry.source.empty() || entry.target.empty()) throw Error(where + "empty phrase");
    table.max_phrase_len = std::max(
        {table.max_phrase_len, static_cast<int>(entry.source.size()),
         static_cast<int>(entry.target.size())});
    table.entries.push_back(std::move(entry));
  }
  return table;
}

PhraseWeighting parse_phrase_weighting(std::string_view name) {
  if (name == "uniform") return PhraseWeighting::kUniform;
  if (name == "frequency") return PhraseWeighting::kFrequency;
  throw InvalidConfig("unknown phrase weighting '" + std::string(name) +
                      "' (expected uniform or frequency)");
}

void PhraseCatConfig::validate() const { phrase_count_dist.validate("phrase count distribution"); }

std::vector<SentencePair> gen_phrase_cat_range(const PhraseTable& table, std::uint64_t first,
                                               std::uint64_t count,
                                               const PhraseCatConfig& config,
                                               std::vector<PhraseDraws>* draw_log) {
  config.validate();
  if (table.empty()) throw Error("phrase table is empty");

  std::vector<std::uint64_t> cumulative;
  if (config.weighting == PhraseWeighting::kFrequency) {
    cumulative.reserve(table.size());
    std::uint64_t total = 0;
    for (const auto& e : table.entries) cumulative.push_back(total += e.count);
  }

  std::vector<SentencePair> out;
  out.reserve(count);
  PhraseDraws draws;
  for (std::uint64_t i = first; i < first + count; ++i) {
    RandomSource rng = config.rng.substream(i);
    const int phrases = sample_length(config.phrase_count_dist, rng);
    draws.clear();
    for (int p = 0; p < phrases; ++p) {
      if (cumulative.empty()) {
        draws.push_back(rng.uniform_below(table.size()));
      } else {
        const std::uint64_t ticket = rng.uniform_below(cumulative.back());
        draws.push_back(static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), ticket) - cumulative.begin()));
      }
    }
    out.push_back(replay_phrase_draws(table, draws));
    if (draw_log) draw_log->push_back(draws);
  }
  return out;
}

ParallelCorpus gen_phrase_cat(const PhraseTable& table, std::uint64_t num_pairs,
                              const PhraseCatConfig& config, std::vector<PhraseDraws>* draw_log) {
  ParallelCorpus corpus;
  corpus.provenance = "phrase-cat";
  corpus.pairs = gen_phrase_cat_range(table, 0, num_pairs, config, draw_log);
  return corpus;
}

SentencePair replay_phrase_draws(const PhraseTable& table, const PhraseDraws& draws) {
  SentencePair pair;
  for (const auto idx : draws) {
    const auto& entry = table.entries.at(idx);
    pair.source.insert(pair.source.end(), entry.source.begin(), entry.source.end());
    pair.target.insert(pair.target.end(), entry.target.begin(), entry.target.end());
  }
  return pair;
}

}  // namespace synthpara
