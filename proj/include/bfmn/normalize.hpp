#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfmn/types.hpp"

namespace bfmn {

// Spell-check reference vocabulary. File format: one word per line,
// optionally "word<TAB>rank" where a lower rank means more frequent.
class Wordlist {
  public:
    static Wordlist load(const std::string& path);
    static Wordlist from_words(const std::vector<std::string>& words);

    bool contains(const std::string& word) const;
    std::optional<std::size_t> rank(const std::string& word) const;
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

  private:
    std::map<std::string, std::size_t> words_;  // word -> rank
};

// Lowercase, strip surrounding punctuation/whitespace, collapse internal
// whitespace runs. Throws EmptyAfterCleaning when nothing is left.
std::string clean_token(const std::string& raw);

// Distance-1 Damerau-Levenshtein correction against the wordlist with
// frequency tie-break. In-vocabulary and uncorrectable tokens pass through.
std::string spell_correct(const std::string& token, const Wordlist& wordlist);

// Porter2 stem; multiword tokens are stemmed word by word and rejoined.
std::string stem(const std::string& token);

// clean + stem without spell correction, used for cue/associate identity.
std::string stem_key(const std::string& raw);

struct NormalizationReport {
    struct Trace {
        std::string cleaned;
        std::string corrected;
        std::string stem;
        std::uint64_t count = 0;
    };
    std::map<std::string, Trace> traces;  // keyed by original token
    std::uint64_t corrections = 0;
    std::uint64_t merges = 0;
    std::uint64_t discarded_tokens = 0;
    std::uint64_t dropped_records = 0;
};

// Canonicalize every associate token and build the stem -> display-form
// table. Records reduced below three associates are dropped (reported).
// A corpus already flagged normalized is returned unchanged.
std::pair<Corpus, NormalizationReport> normalize_corpus(const Corpus& corpus,
                                                        const Wordlist& wordlist);

}  // namespace bfmn
