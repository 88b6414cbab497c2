#include "synthpara/toxicity.hpp"

#include <algorithm>

#include "synthpara/error.hpp"
#include "synthpara/synth_tasks.hpp"

namespace synthpara {
namespace {

Tokens lowered(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(to_lower_ascii(t));
  return out;
}

}  // namespace

ToxicityList make_toxicity_list(const std::vector<std::string>& terms, std::string language) {
  ToxicityList list;
  list.language = std::move(language);
  for (const auto& term : terms) {
    Tokens tokens = tokenize(to_lower_ascii(term));
    if (!tokens.empty()) list.entries.push_back(std::move(tokens));
  }
  std::sort(list.entries.begin(), list.entries.end());
  list.entries.erase(std::unique(list.entries.begin(), list.entries.end()), list.entries.end());
  return list;
}

ToxicityList load_toxicity_list(const std::filesystem::path& path, std::string language) {
  auto list = make_toxicity_list(read_lines(path), std::move(language));
  if (list.entries.empty()) throw Error("toxicity list '" + path.string() + "' has no terms");
  return list;
}

std::set<std::string> is_toxic(const Tokens& sentence, const ToxicityList& list, MatchMode mode) {
  std::set<std::string> matched;
  const Tokens words = lowered(sentence);
  if (mode == MatchMode::kToken) {
    for (const auto& term : list.entries) {
      if (std::search(words.begin(), words.end(), term.begin(), term.end()) != words.end()) {
        matched.insert(join(term));
      }
    }
  } else {
    const std::string text = join(words);
    for (const auto& term : list.entries) {
      const std::string needle = join(term);
      if (text.find(needle) != std::string::npos) matched.insert(needle);
    }
  }
  return matched;
}

ToxicityReport hallucinated_toxicity(const std::vector<Tokens>& sources,
                                     const std::vector<Tokens>& translations,
                                     const ToxicityList& src_list, const ToxicityList& trg_list,
                                     MatchMode mode) {
  if (sources.size() != translations.size()) {
    throw Error("source has " + std::to_string(sources.size()) + " sentences, translation has " +
                std::to_string(translations.size()));
  }
  ToxicityReport report;
  report.total_sentences = sources.size();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const bool source_hit = !is_toxic(sources[i], src_list, mode).empty();
    const auto target_hits = is_toxic(translations[i], trg_list, mode);
    report.source_toxic += source_hit;
    report.target_toxic += !target_hits.empty();
    if (!target_hits.empty() && !source_hit) {
      ++report.hallucinated;
      report.flagged.push_back({i, {target_hits.begin(), target_hits.end()}});
    }
  }
  report.rate = report.total_sentences == 0
                    ? 0.0
                    : static_cast<double>(report.hallucinated) /
                          static_cast<double>(report.total_sentences);
  return report;
}

nlohmann::json to_json(const ToxicityReport& report) {
  nlohmann::json flagged = nlohmann::json::array();
  for (const auto& f : report.flagged) {
    flagged.push_back({{"index", f.index}, {"terms", f.matched_terms}});
  }
  return {{"total_sentences", report.total_sentences},
          {"source_toxic", report.source_toxic},
          {"target_toxic", report.target_toxic},
          {"hallucinated", report.hallucinated},
          {"rate", report.rate},
          {"flagged", std::move(flagged)}};
}

}  // namespace synthpara
