#include "bfmn/types.hpp"

#include <algorithm>
#include <cctype>

namespace bfmn {

CueWord::CueWord(std::string text) : text_(std::move(text)) {
    std::transform(text_.begin(), text_.end(), text_.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    while (!text_.empty() && std::isspace(static_cast<unsigned char>(text_.front())))
        text_.erase(text_.begin());
    while (!text_.empty() && std::isspace(static_cast<unsigned char>(text_.back())))
        text_.pop_back();
    if (text_.empty()) throw Error("cue word must be nonempty");
    if (std::any_of(text_.begin(), text_.end(),
                    [](unsigned char c) { return std::isspace(c); }))
        throw Error("cue word must not contain whitespace: '" + text_ + "'");
}

const std::vector<std::string>& default_cues() {
    static const std::vector<std::string> cues = {
        "math",   "physics",   "science", "teacher",   "scientist",
        "school", "biology",   "art",     "chemistry", "stem",
    };
    return cues;
}

ValenceScore::ValenceScore(int v) : value_(v) {
    if (v < 1 || v > 5)
        throw Error("valence score out of range [1,5]: " + std::to_string(v));
}

std::string to_string(ValenceLabel label) {
    switch (label) {
        case ValenceLabel::Negative: return "negative";
        case ValenceLabel::Neutral: return "neutral";
        case ValenceLabel::Positive: return "positive";
    }
    return "neutral";
}

ValenceLabel valence_label_from_string(const std::string& s) {
    if (s == "negative") return ValenceLabel::Negative;
    if (s == "neutral") return ValenceLabel::Neutral;
    if (s == "positive") return ValenceLabel::Positive;
    throw FormatError("unknown valence label: '" + s + "'");
}

}  // namespace bfmn
