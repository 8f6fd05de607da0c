#include "bfmn/probe.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "bfmn/normalize.hpp"

namespace bfmn {

std::string render_association_prompt(const CueWord& cue) {
    return "Write a list of 3 words that come to your mind when you think of " + cue.str() +
           " and rate each word on a scale from 1 (very negative) to 5 (very positive) "
           "according to the sentiment the word inspires in you.";
}

std::string render_cue_rating_prompt(const CueWord& cue) {
    return "Rate the word " + cue.str() +
           " on a scale from 1 (very negative) to 5 (very positive) according to the "
           "sentiment the word inspires in you. Reply with a single number.";
}

namespace {

bool is_alpha(unsigned char c) { return std::isalpha(c) != 0 || c >= 0x80; }

std::string replace_dashes(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        // en dash / em dash -> ascii hyphen
        if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
            static_cast<unsigned char>(s[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(s[i + 2]) == 0x93 ||
             static_cast<unsigned char>(s[i + 2]) == 0x94)) {
            out.push_back('-');
            i += 2;
            continue;
        }
        out.push_back(s[i]);
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// "1." / "2)" / "3/" enumeration markers at the start of a segment
std::string strip_enumeration(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0 || i > 3 || i >= s.size()) return s;
    char c = s[i];
    if (c != '.' && c != ')' && c != '/') return s;
    ++i;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

// Normalize a token: lowercase, hyphens to spaces, strip surrounding
// punctuation and dangling digit groups, collapse whitespace.
std::string clean_item_token(const std::string& raw) {
    std::string s;
    s.reserve(raw.size());
    for (unsigned char c : raw) {
        if (c == '-')
            s.push_back(' ');
        else
            s.push_back(static_cast<char>(std::tolower(c)));
    }
    std::string collapsed;
    bool in_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !collapsed.empty()) collapsed.push_back(' ');
        in_space = false;
        collapsed.push_back(static_cast<char>(c));
    }
    // strip leading punctuation/digits not attached to a letter
    std::size_t b = 0;
    while (b < collapsed.size() && !is_alpha(static_cast<unsigned char>(collapsed[b]))) ++b;
    collapsed.erase(0, b);
    // strip trailing punctuation and space-separated digit groups
    while (!collapsed.empty()) {
        unsigned char back = static_cast<unsigned char>(collapsed.back());
        if (is_alpha(back)) break;
        if (std::isdigit(back)) {
            std::size_t d = collapsed.size();
            while (d > 0 && std::isdigit(static_cast<unsigned char>(collapsed[d - 1]))) --d;
            if (d > 0 && is_alpha(static_cast<unsigned char>(collapsed[d - 1]))) break;
            collapsed.erase(d);
        } else {
            collapsed.pop_back();
        }
        while (!collapsed.empty() &&
               (std::isspace(static_cast<unsigned char>(collapsed.back())) ||
                std::ispunct(static_cast<unsigned char>(collapsed.back()))))
            collapsed.pop_back();
    }
    return collapsed;
}

struct SegmentItem {
    std::string token;
    int score = 0;
};

// A segment carries at most one scored item: its final integer in [1,5]
// (or the numerator of a trailing "x/5") preceded by the token text.
std::optional<SegmentItem> parse_segment(const std::string& segment_in) {
    std::string segment = strip_enumeration(trim(segment_in));
    if (segment.empty()) return std::nullopt;

    struct Run {
        std::size_t begin, end;
        long value;
    };
    std::vector<Run> runs;
    std::size_t i = 0;
    while (i < segment.size()) {
        if (std::isdigit(static_cast<unsigned char>(segment[i]))) {
            std::size_t j = i;
            while (j < segment.size() && std::isdigit(static_cast<unsigned char>(segment[j]))) ++j;
            long value = -1;
            if (j - i <= 3) value = std::stol(segment.substr(i, j - i));
            runs.push_back({i, j, value});
            i = j;
        } else {
            ++i;
        }
    }
    if (runs.empty()) return std::nullopt;

    Run score_run = runs.back();
    // "4/5"-style ratings: use the numerator
    if (runs.size() >= 2) {
        const Run& prev = runs[runs.size() - 2];
        std::string between = trim(segment.substr(prev.end, score_run.begin - prev.end));
        if (between == "/") score_run = prev;
    }
    if (score_run.value < 1 || score_run.value > 5) return std::nullopt;

    // nothing but punctuation/whitespace may follow the score
    for (std::size_t k = (score_run.begin == runs.back().begin ? score_run.end : runs.back().end);
         k < segment.size(); ++k) {
        unsigned char c = static_cast<unsigned char>(segment[k]);
        if (is_alpha(c)) return std::nullopt;
    }
    // ...unless the trailing part was the "/5" denominator, already skipped

    std::string token = clean_item_token(segment.substr(0, score_run.begin));
    if (token.empty()) return std::nullopt;
    return SegmentItem{token, static_cast<int>(score_run.value)};
}

}  // namespace

ParsedReply parse_association_reply(const std::string& raw, const CueWord& cue) {
    (void)cue;  // the repetition filter runs separately
    ParsedReply reply;
    std::istringstream lines(replace_dashes(raw));
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string segment;
        std::istringstream segments(line);
        while (std::getline(segments, segment, ',')) {
            std::string piece;
            std::istringstream pieces(segment);
            while (std::getline(pieces, piece, ';')) {
                if (auto item = parse_segment(piece))
                    reply.items.push_back(
                        {item->token, ValenceScore(item->score)});
            }
        }
    }
    if (reply.items.size() != 3) {
        reply.failure = "found " + std::to_string(reply.items.size()) +
                        " scored items, expected 3";
        reply.items.clear();
    }
    return reply;
}

std::optional<int> parse_rating_reply(const std::string& raw) {
    std::size_t i = 0;
    while (i < raw.size()) {
        if (std::isdigit(static_cast<unsigned char>(raw[i]))) {
            std::size_t j = i;
            while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
            if (j - i == 1) {
                int v = raw[i] - '0';
                if (v >= 1 && v <= 5) return v;
            }
            i = j;
        } else {
            ++i;
        }
    }
    return std::nullopt;
}

Compliance filter_compliance(const std::array<ScoredAssociate, 3>& associates,
                             const CueWord& cue) {
    std::string cue_stem;
    try {
        cue_stem = stem_key(cue.str());
    } catch (const EmptyAfterCleaning&) {
        return Compliance::Accept;
    }
    for (const ScoredAssociate& assoc : associates) {
        try {
            if (stem_key(assoc.token) == cue_stem) return Compliance::Discard;
        } catch (const EmptyAfterCleaning&) {
            continue;
        }
    }
    return Compliance::Accept;
}

namespace {

struct Collector {
    const ProbeConfig& config;
    ChatTransport& transport;
    const std::function<void(const Exchange&)>& on_exchange;
    Corpus corpus;
    CampaignStats stats;
    std::uint64_t next_sequence = 0;
    std::string first_timestamp;
    std::string model_id;
    std::mutex mutex;

    void emit(Exchange e) {
        if (first_timestamp.empty()) first_timestamp = e.timestamp;
        if (on_exchange) on_exchange(e);
    }

    // Returns true when the reply was accepted into the corpus.
    bool handle_association_reply(const CueWord& cue, const std::string& prompt,
                                  const Completion& completion) {
        CampaignStats::PerCue& pc = stats.per_cue[cue.str()];
        ParsedReply parsed = parse_association_reply(completion.raw_reply, cue);
        Exchange exchange{next_sequence, cue.str(), prompt, completion.raw_reply,
                          model_id, completion.timestamp, ""};
        bool accepted = false;
        if (!parsed.ok()) {
            exchange.parse_status = "discarded_unparseable";
            ++pc.discarded_unparseable;
        } else {
            std::array<ScoredAssociate, 3> associates{parsed.items[0], parsed.items[1],
                                                      parsed.items[2]};
            if (filter_compliance(associates, cue) == Compliance::Discard) {
                exchange.parse_status = "discarded_repetition";
                ++pc.discarded_repetition;
            } else {
                exchange.parse_status = "accepted";
                ++pc.accepted;
                corpus.records.push_back(ResponseRecord{cue, associates, completion.raw_reply,
                                                        model_id, next_sequence,
                                                        completion.timestamp});
                accepted = true;
            }
        }
        ++stats.total_requests;
        emit(exchange);
        ++next_sequence;
        return accepted;
    }

    void collect_cue_sequential(const CueWord& cue) {
        const std::string prompt = render_association_prompt(cue);
        CampaignStats::PerCue& pc = stats.per_cue[cue.str()];
        while (pc.accepted < config.target_responses_per_cue &&
               pc.attempts() < config.max_attempts) {
            Completion completion = transport.complete(prompt);
            handle_association_reply(cue, prompt, completion);
        }
        if (pc.accepted < config.target_responses_per_cue)
            throw TargetNotReached(cue.str(), pc.accepted, pc.attempts());
    }

    void collect_cue_concurrent(const CueWord& cue) {
        const std::string prompt = render_association_prompt(cue);
        std::atomic<std::size_t> launched{0};
        std::exception_ptr failure;
        std::vector<std::thread> workers;
        const std::size_t worker_count = config.concurrency;
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                while (true) {
                    {
                        std::scoped_lock lock(mutex);
                        if (failure) return;
                        if (stats.per_cue[cue.str()].accepted >= config.target_responses_per_cue)
                            return;
                    }
                    if (launched.fetch_add(1) >= config.max_attempts) return;
                    try {
                        Completion completion = transport.complete(prompt);
                        std::scoped_lock lock(mutex);
                        if (failure) return;
                        handle_association_reply(cue, prompt, completion);
                    } catch (...) {
                        std::scoped_lock lock(mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& t : workers) t.join();
        if (failure) std::rethrow_exception(failure);
        CampaignStats::PerCue& pc = stats.per_cue[cue.str()];
        if (pc.accepted < config.target_responses_per_cue)
            throw TargetNotReached(cue.str(), pc.accepted, pc.attempts());
    }

    void collect_cue_ratings(const CueWord& cue) {
        const std::string prompt = render_cue_rating_prompt(cue);
        for (std::size_t k = 0; k < config.cue_rating_samples; ++k) {
            bool got = false;
            for (std::size_t attempt = 0; attempt < config.max_attempts; ++attempt) {
                Completion completion = transport.complete(prompt);
                ++stats.total_requests;
                std::optional<int> score = parse_rating_reply(completion.raw_reply);
                Exchange exchange{next_sequence, cue.str(), prompt, completion.raw_reply,
                                  model_id, completion.timestamp,
                                  score ? "rating_ok" : "rating_unparseable"};
                emit(exchange);
                ++next_sequence;
                if (score) {
                    corpus.cue_ratings.push_back(CueRating{cue, ValenceScore(*score)});
                    got = true;
                    break;
                }
            }
            if (!got)
                throw TargetNotReached(cue.str() + " (rating)", 0, config.max_attempts);
        }
    }
};

}  // namespace

std::pair<Corpus, CampaignStats> collect_corpus(
    const ProbeConfig& config, const std::vector<CueWord>& cues, ChatTransport& transport,
    const std::function<void(const Exchange&)>& on_exchange) {
    Collector collector{config, transport, on_exchange};
    collector.model_id = config.model_id;
    if (collector.model_id.empty()) {
        if (auto* replay = dynamic_cast<ReplayTransport*>(&transport))
            collector.model_id = replay->default_model_id();
    }
    collector.corpus.metadata.model_id = collector.model_id;
    collector.corpus.metadata.temperature = config.temperature;
    collector.corpus.metadata.seed = config.seed;

    const bool concurrent = config.concurrency > 1 && !transport.deterministic();
    for (const CueWord& cue : cues) {
        if (concurrent)
            collector.collect_cue_concurrent(cue);
        else
            collector.collect_cue_sequential(cue);
        collector.collect_cue_ratings(cue);
    }
    collector.corpus.metadata.created = collector.first_timestamp;

    // records arrive in sequence order by construction; keep it explicit
    std::sort(collector.corpus.records.begin(), collector.corpus.records.end(),
              [](const ResponseRecord& a, const ResponseRecord& b) {
                  return a.sequence < b.sequence;
              });
    return {std::move(collector.corpus), std::move(collector.stats)};
}

std::pair<Corpus, CampaignStats> collect_corpus(const ProbeConfig& config,
                                                const std::vector<CueWord>& cues) {
    if (config.mode == ProbeConfig::Mode::Replay) {
        if (config.transcript_path.empty())
            throw UsageError("replay mode requires a transcript path");
        ReplayTransport transport(config.transcript_path);
        return collect_corpus(config, cues, transport);
    }

    HttpTransportOptions options;
    options.endpoint_url = config.endpoint_url;
    options.model_id = config.model_id;
    options.api_key = config.api_key;
    options.temperature = config.temperature;
    options.max_retries = config.max_retries;
    options.retry_backoff_ms = config.retry_backoff_ms;
    options.rate_limit = config.rate_limit;
    HttpChatTransport transport(options);

    if (config.mode == ProbeConfig::Mode::Record) {
        if (config.transcript_path.empty())
            throw UsageError("record mode requires a transcript path");
        std::ofstream out(config.transcript_path);
        if (!out) throw FileError("cannot open transcript for writing: " + config.transcript_path);
        std::mutex write_mutex;
        auto writer = [&out, &write_mutex](const Exchange& e) {
            std::scoped_lock lock(write_mutex);
            out << exchange_to_jsonl(e) << '\n';
        };
        return collect_corpus(config, cues, transport, writer);
    }
    return collect_corpus(config, cues, transport);
}

}  // namespace bfmn
