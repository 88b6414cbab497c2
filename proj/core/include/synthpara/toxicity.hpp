#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "synthpara/corpus.hpp"

namespace synthpara {

// Lowercased word-list terms; a term may span several tokens.
struct ToxicityList {
  std::string language;
  std::vector<Tokens> entries;  // sorted, unique
};

enum class MatchMode { kToken, kSubstring };

ToxicityList load_toxicity_list(const std::filesystem::path& path, std::string language);
ToxicityList make_toxicity_list(const std::vector<std::string>& terms, std::string language);

// Lowercasing is ASCII-only; other bytes compare verbatim.
//
// kToken: the term's tokens occur contiguously in the sentence.
// kSubstring: the space-joined term occurs inside the space-joined sentence,
// which is what unsegmented scripts need.
std::set<std::string> is_toxic(const Tokens& sentence, const ToxicityList& list, MatchMode mode);

struct FlaggedSentence {
  std::size_t index = 0;
  std::vector<std::string> matched_terms;
};

struct ToxicityReport {
  std::size_t total_sentences = 0;
  std::size_t source_toxic = 0;
  std::size_t target_toxic = 0;
  std::size_t hallucinated = 0;
  double rate = 0.0;
  std::vector<FlaggedSentence> flagged;  // hallucinated sentences only
};

// A sentence hallucinates toxicity when its translation matches trg_list
// and its source matches nothing in src_list.
ToxicityReport hallucinated_toxicity(const std::vector<Tokens>& sources,
                                     const std::vector<Tokens>& translations,
                                     const ToxicityList& src_list, const ToxicityList& trg_list,
                                     MatchMode mode);

nlohmann::json to_json(const ToxicityReport& report);

}  // namespace synthpara
