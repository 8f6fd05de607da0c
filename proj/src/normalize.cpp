#include "bfmn/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bfmn/stemmer.hpp"

namespace bfmn {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

// Candidate spell corrections: every string at restricted Damerau-Levenshtein
// distance 1 (deletion, insertion, substitution, adjacent transposition).
std::set<std::string> distance1_edits(const std::string& w) {
    static const char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz";
    std::set<std::string> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::string d = w;
        d.erase(i, 1);
        if (!d.empty()) out.insert(d);
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == w[i + 1]) continue;
        std::string t = w;
        std::swap(t[i], t[i + 1]);
        out.insert(t);
    }
    for (std::size_t i = 0; i <= w.size(); ++i) {
        for (char c : kAlphabet) {
            std::string ins = w;
            ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), c);
            out.insert(ins);
        }
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (char c : kAlphabet) {
            if (w[i] == c) continue;
            std::string sub = w;
            sub[i] = c;
            out.insert(sub);
        }
    }
    out.erase(w);
    return out;
}

std::string correct_single_word(const std::string& word, const Wordlist& wordlist) {
    if (word.empty() || wordlist.empty() || wordlist.contains(word)) return word;
    std::string best;
    std::size_t best_rank = 0;
    std::size_t found = 0;
    for (const std::string& cand : distance1_edits(word)) {
        auto rank = wordlist.rank(cand);
        if (!rank) continue;
        ++found;
        if (best.empty() || *rank < best_rank) {
            best = cand;
            best_rank = *rank;
        }
    }
    return found == 0 ? word : best;
}

}  // namespace

Wordlist Wordlist::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open wordlist: " + path);
    Wordlist wl;
    std::string line;
    std::size_t fallback_rank = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string word = line;
        std::size_t rank = ++fallback_rank;
        if (auto tab = line.find('\t'); tab != std::string::npos) {
            word = line.substr(0, tab);
            try {
                rank = static_cast<std::size_t>(std::stoull(line.substr(tab + 1)));
            } catch (const std::exception&) {
                throw FormatError("bad rank in wordlist line: '" + line + "'");
            }
        }
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (word.empty()) continue;
        auto [it, inserted] = wl.words_.emplace(word, rank);
        if (!inserted) it->second = std::min(it->second, rank);
    }
    if (wl.words_.empty()) throw FormatError("wordlist is empty: " + path);
    return wl;
}

Wordlist Wordlist::from_words(const std::vector<std::string>& words) {
    Wordlist wl;
    std::size_t rank = 0;
    for (const std::string& w : words) {
        std::string lower = w;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        wl.words_.emplace(lower, ++rank);
    }
    return wl;
}

bool Wordlist::contains(const std::string& word) const { return words_.count(word) > 0; }

std::optional<std::size_t> Wordlist::rank(const std::string& word) const {
    auto it = words_.find(word);
    if (it == words_.end()) return std::nullopt;
    return it->second;
}

std::string clean_token(const std::string& raw) {
    std::string lower;
    lower.reserve(raw.size());
    for (unsigned char c : raw) lower.push_back(static_cast<char>(std::tolower(c)));

    std::size_t begin = 0, end = lower.size();
    while (begin < end && !is_word_char(static_cast<unsigned char>(lower[begin]))) ++begin;
    while (end > begin && !is_word_char(static_cast<unsigned char>(lower[end - 1]))) --end;

    std::string out;
    bool in_space = false;
    for (std::size_t i = begin; i < end; ++i) {
        unsigned char c = static_cast<unsigned char>(lower[i]);
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space) {
            out.push_back(' ');
            in_space = false;
        }
        out.push_back(static_cast<char>(c));
    }
    if (out.empty()) throw EmptyAfterCleaning("token empty after cleaning: '" + raw + "'");
    return out;
}

std::string spell_correct(const std::string& token, const Wordlist& wordlist) {
    if (token.find(' ') == std::string::npos) return correct_single_word(token, wordlist);
    std::istringstream in(token);
    std::string word, out;
    while (in >> word) {
        if (!out.empty()) out.push_back(' ');
        out += correct_single_word(word, wordlist);
    }
    return out;
}

std::string stem(const std::string& token) {
    if (token.find(' ') == std::string::npos) return porter2_stem(token);
    std::istringstream in(token);
    std::string word, out;
    while (in >> word) {
        if (!out.empty()) out.push_back(' ');
        out += porter2_stem(word);
    }
    return out;
}

std::string stem_key(const std::string& raw) { return stem(clean_token(raw)); }

std::pair<Corpus, NormalizationReport> normalize_corpus(const Corpus& corpus,
                                                        const Wordlist& wordlist) {
    NormalizationReport report;
    if (corpus.metadata.normalized) return {corpus, report};

    Corpus out;
    out.metadata = corpus.metadata;
    out.metadata.normalized = true;
    out.cue_ratings = corpus.cue_ratings;

    // stem -> surface form -> occurrences, for the display-form table
    std::map<std::string, std::map<std::string, std::uint64_t>> surfaces;
    std::set<std::string> distinct_corrected;

    for (const ResponseRecord& record : corpus.records) {
        ResponseRecord normalized = record;
        const std::string cue_stem = stem_key(record.cue.str());
        struct Step {
            std::string original, cleaned, corrected, stemmed;
        };
        std::vector<Step> steps;
        bool keep = true;
        for (ScoredAssociate& assoc : normalized.associates) {
            std::string cleaned;
            try {
                cleaned = clean_token(assoc.token);
            } catch (const EmptyAfterCleaning&) {
                ++report.discarded_tokens;
                keep = false;
                break;
            }
            std::string corrected = spell_correct(cleaned, wordlist);
            std::string stemmed = stem(corrected);
            if (stemmed == cue_stem) {
                // correction may introduce a cue repetition the probe-time
                // filter could not see; the record invariant wins
                ++report.discarded_tokens;
                keep = false;
                break;
            }
            steps.push_back({assoc.token, cleaned, corrected, stemmed});
            assoc.token = stemmed;
        }
        if (!keep) {
            ++report.dropped_records;
            continue;
        }
        for (const Step& step : steps) {
            auto& trace = report.traces[step.original];
            if (trace.count == 0) {
                trace.cleaned = step.cleaned;
                trace.corrected = step.corrected;
                trace.stem = step.stemmed;
            }
            ++trace.count;
            if (step.corrected != step.cleaned) ++report.corrections;
            surfaces[step.stemmed][step.corrected] += 1;
            distinct_corrected.insert(step.corrected);
        }
        out.records.push_back(std::move(normalized));
    }

    for (const auto& [stemmed, forms] : surfaces) {
        std::string best;
        std::uint64_t best_count = 0;
        for (const auto& [form, count] : forms) {
            if (count > best_count) {
                best = form;
                best_count = count;
            }
        }
        out.display_forms[stemmed] = best;
    }
    // cue words render as themselves unless observed as associates
    for (const ResponseRecord& record : out.records) {
        const std::string cue_stem = stem_key(record.cue.str());
        out.display_forms.emplace(cue_stem, clean_token(record.cue.str()));
    }
    for (const CueRating& rating : out.cue_ratings)
        out.display_forms.emplace(stem_key(rating.cue.str()), clean_token(rating.cue.str()));

    report.merges = distinct_corrected.size() - surfaces.size();
    return {out, report};
}

}  // namespace bfmn
