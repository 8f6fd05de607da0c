#include "bfmn/stemmer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

// Porter2 English stemmer, implemented from the published Snowball
// definition. Regions R1/R2 are absolute positions marked once after the
// initial y-handling pass; suffix tests compare against those marks.

namespace bfmn {
namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double(const std::string& w) {
    std::size_t n = w.size();
    if (n < 2 || w[n - 1] != w[n - 2]) return false;
    switch (w[n - 1]) {
        case 'b': case 'd': case 'f': case 'g': case 'm':
        case 'n': case 'p': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

bool valid_li_ending(char c) {
    switch (c) {
        case 'c': case 'd': case 'e': case 'g': case 'h':
        case 'k': case 'm': case 'n': case 'r': case 't':
            return true;
        default:
            return false;
    }
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A vowel-nonvowel pair closing the word, per the Porter2 short-syllable rule.
bool ends_short_syllable(const std::string& w) {
    std::size_t n = w.size();
    if (n == 2) return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n >= 3) {
        char c2 = w[n - 1];
        return !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && !is_vowel(c2) &&
               c2 != 'w' && c2 != 'x' && c2 != 'Y';
    }
    return false;
}

void mark_regions(const std::string& w, std::size_t& r1, std::size_t& r2) {
    std::size_t n = w.size();
    r1 = n;
    for (std::string_view p : {"gener", "commun", "arsen"}) {
        if (w.compare(0, p.size(), p) == 0) {
            r1 = p.size();
            break;
        }
    }
    if (r1 == n) {
        for (std::size_t i = 1; i < n; ++i) {
            if (!is_vowel(w[i]) && is_vowel(w[i - 1])) {
                r1 = i + 1;
                break;
            }
        }
    }
    r2 = n;
    for (std::size_t i = r1 + 1; i < n; ++i) {
        if (!is_vowel(w[i]) && is_vowel(w[i - 1])) {
            r2 = i + 1;
            break;
        }
    }
}

bool contains_vowel(const std::string& w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && i < w.size(); ++i)
        if (is_vowel(w[i])) return true;
    return false;
}

}  // namespace

std::string porter2_stem(std::string_view input) {
    std::string w(input);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!w.empty() && w[0] == '\'') w.erase(0, 1);

    static const std::map<std::string, std::string> kException1 = {
        {"skis", "ski"},     {"skies", "sky"},   {"dying", "die"},
        {"lying", "lie"},    {"tying", "tie"},   {"idly", "idl"},
        {"gently", "gentl"}, {"ugly", "ugli"},   {"early", "earli"},
        {"only", "onli"},    {"singly", "singl"},{"sky", "sky"},
        {"news", "news"},    {"howe", "howe"},   {"atlas", "atlas"},
        {"cosmos", "cosmos"},{"bias", "bias"},   {"andes", "andes"},
    };
    if (auto it = kException1.find(w); it != kException1.end()) return it->second;
    if (w.size() <= 2) return w;

    // y is a consonant at the start of the word or after a vowel
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] == 'y' && (i == 0 || is_vowel(w[i - 1]))) w[i] = 'Y';

    std::size_t r1 = 0, r2 = 0;
    mark_regions(w, r1, r2);

    // step 0
    for (std::string_view s : {"'s'", "'s", "'"}) {
        if (ends_with(w, s)) {
            w.erase(w.size() - s.size());
            break;
        }
    }

    // step 1a
    if (ends_with(w, "sses")) {
        w.erase(w.size() - 2);
    } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
        if (w.size() > 4)
            w.erase(w.size() - 2);  // -> i
        else
            w.erase(w.size() - 1);  // -> ie
    } else if (ends_with(w, "us") || ends_with(w, "ss")) {
        // leave alone
    } else if (ends_with(w, "s")) {
        if (w.size() >= 3 && contains_vowel(w, 0, w.size() - 2)) w.pop_back();
    }

    static const std::array<std::string_view, 8> kException2 = {
        "inning", "outing",  "canning", "herring",
        "earring", "proceed", "exceed",  "succeed",
    };
    if (std::find(kException2.begin(), kException2.end(), w) != kException2.end()) return w;

    // step 1b
    {
        std::string_view match;
        for (std::string_view s : {"eedly", "ingly", "edly", "eed", "ing", "ed"}) {
            if (ends_with(w, s)) {
                match = s;
                break;
            }
        }
        if (match == "eed" || match == "eedly") {
            if (w.size() - match.size() >= r1) w.replace(w.size() - match.size(), match.size(), "ee");
        } else if (!match.empty()) {
            if (contains_vowel(w, 0, w.size() - match.size())) {
                w.erase(w.size() - match.size());
                if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
                    w += 'e';
                } else if (is_double(w)) {
                    w.pop_back();
                } else if (r1 >= w.size() && ends_short_syllable(w)) {
                    w += 'e';
                }
            }
        }
    }

    // step 1c
    if (w.size() >= 3 && (w.back() == 'y' || w.back() == 'Y') && !is_vowel(w[w.size() - 2]))
        w.back() = 'i';

    // step 2: longest matching suffix wins; applied only when inside R1
    {
        struct Rule {
            std::string_view suffix, replacement;
        };
        static const std::array<Rule, 24> kStep2 = {{
            {"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"iveness", "ive"}, {"tional", "tion"},
            {"biliti", "ble"},  {"lessli", "less"}, {"entli", "ent"},
            {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
            {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},
            {"enci", "ence"},   {"anci", "ance"},   {"abli", "able"},
            {"izer", "ize"},    {"ator", "ate"},    {"alli", "al"},
            {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
        }};
        for (const Rule& rule : kStep2) {
            if (!ends_with(w, rule.suffix)) continue;
            std::size_t at = w.size() - rule.suffix.size();
            if (at >= r1) {
                if (rule.suffix == "ogi") {
                    if (at >= 1 && w[at - 1] == 'l') w.replace(at, rule.suffix.size(), rule.replacement);
                } else if (rule.suffix == "li") {
                    if (at >= 1 && valid_li_ending(w[at - 1])) w.erase(at);
                } else {
                    w.replace(at, rule.suffix.size(), rule.replacement);
                }
            }
            break;
        }
    }

    // step 3
    {
        struct Rule {
            std::string_view suffix, replacement;
        };
        static const std::array<Rule, 9> kStep3 = {{
            {"ational", "ate"}, {"tional", "tion"}, {"alize", "al"},
            {"icate", "ic"},    {"iciti", "ic"},    {"ative", ""},
            {"ical", "ic"},     {"ness", ""},       {"ful", ""},
        }};
        for (const Rule& rule : kStep3) {
            if (!ends_with(w, rule.suffix)) continue;
            std::size_t at = w.size() - rule.suffix.size();
            if (at >= r1) {
                if (rule.suffix == "ative") {
                    if (at >= r2) w.erase(at);
                } else {
                    w.replace(at, rule.suffix.size(), rule.replacement);
                }
            }
            break;
        }
    }

    // step 4
    {
        static const std::array<std::string_view, 18> kStep4 = {
            "ement", "ance", "ence", "able", "ible", "ment",
            "ant",   "ent",  "ism",  "ate",  "iti",  "ous",
            "ive",   "ize",  "ion",  "al",   "er",   "ic",
        };
        for (std::string_view s : kStep4) {
            if (!ends_with(w, s)) continue;
            std::size_t at = w.size() - s.size();
            if (at >= r2) {
                if (s == "ion") {
                    if (at >= 1 && (w[at - 1] == 's' || w[at - 1] == 't')) w.erase(at);
                } else {
                    w.erase(at);
                }
            }
            break;
        }
    }

    // step 5
    if (!w.empty() && w.back() == 'e') {
        std::size_t at = w.size() - 1;
        if (at >= r2) {
            w.pop_back();
        } else if (at >= r1) {
            std::string head = w.substr(0, at);
            if (!ends_short_syllable(head)) w.pop_back();
        }
    } else if (!w.empty() && w.back() == 'l') {
        std::size_t at = w.size() - 1;
        if (at >= r2 && at >= 1 && w[at - 1] == 'l') w.pop_back();
    }

    std::replace(w.begin(), w.end(), 'Y', 'y');
    return w;
}

}  // namespace bfmn
