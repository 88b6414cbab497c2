#include "synthpara/stats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "synthpara/error.hpp"

namespace synthpara {
namespace {

std::unordered_set<std::string> types_of(const std::vector<Tokens>& lines) {
  std::unordered_set<std::string> types;
  for (const auto& line : lines) types.insert(line.begin(), line.end());
  return types;
}

template <class Side>
SideSummary summarize(const ParallelCorpus& corpus, Side side) {
  SideSummary s;
  std::unordered_set<std::string> types;
  s.min_length = SIZE_MAX;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& pair : corpus.pairs) {
    const Tokens& tokens = side(pair);
    const std::size_t n = tokens.size();
    s.tokens += n;
    types.insert(tokens.begin(), tokens.end());
    ++s.length_histogram[n];
    s.min_length = std::min(s.min_length, n);
    s.max_length = std::max(s.max_length, n);
    sum += static_cast<double>(n);
    sum_sq += static_cast<double>(n) * static_cast<double>(n);
  }
  const auto count = static_cast<double>(corpus.size());
  s.types = types.size();
  s.mean_length = sum / count;
  s.stddev_length = std::sqrt(std::max(0.0, sum_sq / count - s.mean_length * s.mean_length));
  return s;
}

nlohmann::json side_json(const SideSummary& s) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [len, n] : s.length_histogram) hist[std::to_string(len)] = n;
  return {{"tokens", s.tokens},
          {"types", s.types},
          {"mean_length", s.mean_length},
          {"stddev_length", s.stddev_length},
          {"min_length", s.min_length},
          {"max_length", s.max_length},
          {"length_histogram", std::move(hist)}};
}

}  // namespace

VocabOverlapReport vocab_overlap(const std::vector<Tokens>& pretrain,
                                 const std::vector<Tokens>& finetune, std::string label) {
  const auto pt = types_of(pretrain);
  const auto ft = types_of(finetune);
  VocabOverlapReport report;
  report.label = std::move(label);
  report.v_pt = pt.size();
  report.v_ft = ft.size();
  const auto& smaller = pt.size() <= ft.size() ? pt : ft;
  const auto& larger = pt.size() <= ft.size() ? ft : pt;
  for (const auto& t : smaller) report.overlap += larger.count(t);
  return report;
}

VocabOverlapReport vocab_overlap(const std::filesystem::path& pretrain_path,
                                 const std::filesystem::path& finetune_path, std::string label) {
  const auto pt = read_sentences(pretrain_path, true);
  const auto ft = read_sentences(finetune_path, true);
  auto no_tokens = [](const std::vector<Tokens>& lines) {
    return std::all_of(lines.begin(), lines.end(), [](const Tokens& t) { return t.empty(); });
  };
  if (no_tokens(pt)) throw Error("'" + pretrain_path.string() + "' contains no tokens");
  if (no_tokens(ft)) throw Error("'" + finetune_path.string() + "' contains no tokens");
  return vocab_overlap(pt, ft, std::move(label));
}

CorpusSummary corpus_summary(const ParallelCorpus& corpus) {
  if (corpus.empty()) throw Error("cannot summarize an empty corpus");
  CorpusSummary summary;
  summary.pairs = corpus.size();
  summary.source = summarize(corpus, [](const SentencePair& p) -> const Tokens& { return p.source; });
  summary.target = summarize(corpus, [](const SentencePair& p) -> const Tokens& { return p.target; });
  return summary;
}

nlohmann::json to_json(const VocabOverlapReport& report) {
  return {{"label", report.label},
          {"v_pt", report.v_pt},
          {"v_ft", report.v_ft},
          {"overlap", report.overlap}};
}

nlohmann::json to_json(const CorpusSummary& summary) {
  return {{"pairs", summary.pairs},
          {"source", side_json(summary.source)},
          {"target", side_json(summary.target)}};
}

}  // namespace synthpara
