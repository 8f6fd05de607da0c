#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bfmn/errors.hpp"

namespace bfmn {

// A cue word: nonempty lowercase token without interior whitespace.
class CueWord {
  public:
    explicit CueWord(std::string text);
    const std::string& str() const { return text_; }
    bool operator==(const CueWord& o) const { return text_ == o.text_; }
    bool operator<(const CueWord& o) const { return text_ < o.text_; }

  private:
    std::string text_;
};

// The ten concepts probed by default when no cue list is given.
const std::vector<std::string>& default_cues();

// Integer valence rating on the 1 (very negative) .. 5 (very positive) scale.
class ValenceScore {
  public:
    explicit ValenceScore(int v);
    int value() const { return value_; }
    bool operator==(const ValenceScore& o) const { return value_ == o.value_; }

  private:
    int value_;
};

struct ScoredAssociate {
    std::string token;
    ValenceScore score;
};

// One accepted participant-turn: a cue and its three scored responses.
struct ResponseRecord {
    CueWord cue;
    std::array<ScoredAssociate, 3> associates;
    std::string raw_reply;
    std::string model_id;
    std::uint64_t sequence = 0;
    std::string timestamp;  // ISO-8601 UTC; kept verbatim for byte-stable replay
};

struct CueRating {
    CueWord cue;
    ValenceScore score;
};

struct CorpusMetadata {
    std::string model_id;
    double temperature = 0.7;
    std::string created;
    bool normalized = false;
    std::uint64_t seed = 0;
};

// A model's full collection of responses plus independent cue ratings.
struct Corpus {
    CorpusMetadata metadata;
    std::vector<CueRating> cue_ratings;
    std::vector<ResponseRecord> records;
    // stem -> most frequent surface form, filled by normalize_corpus
    std::map<std::string, std::string> display_forms;
};

struct CampaignStats {
    struct PerCue {
        std::uint64_t accepted = 0;
        std::uint64_t discarded_repetition = 0;
        std::uint64_t discarded_unparseable = 0;
        std::uint64_t attempts() const {
            return accepted + discarded_repetition + discarded_unparseable;
        }
    };
    std::map<std::string, PerCue> per_cue;
    std::uint64_t total_requests = 0;
};

enum class ValenceLabel { Negative, Neutral, Positive };

std::string to_string(ValenceLabel label);
ValenceLabel valence_label_from_string(const std::string& s);

}  // namespace bfmn
