#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfmn/transport.hpp"
#include "bfmn/types.hpp"

namespace bfmn {

std::string render_association_prompt(const CueWord& cue);
std::string render_cue_rating_prompt(const CueWord& cue);

struct ParsedReply {
    std::vector<ScoredAssociate> items;
    std::string failure;  // nonempty on parse failure
    bool ok() const { return failure.empty(); }
};

// Tolerant reply grammar: per line, comma/semicolon segments each yield at
// most one (token, score) item whose integer 1-5 terminates the segment.
// Leading enumeration markers are stripped; hyphens inside tokens collapse
// to single spaces. Exactly three items must be found.
ParsedReply parse_association_reply(const std::string& raw, const CueWord& cue);

// First integer 1..5 in the reply, if any.
std::optional<int> parse_rating_reply(const std::string& raw);

enum class Compliance { Accept, Discard };

// Discard when any associate stem-equals the cue (clean + stem on both
// sides, no spell correction).
Compliance filter_compliance(const std::array<ScoredAssociate, 3>& associates,
                             const CueWord& cue);

struct ProbeConfig {
    enum class Mode { Live, Record, Replay };
    std::string endpoint_url;
    std::string model_id;
    std::string api_key;
    double temperature = 0.7;
    std::size_t target_responses_per_cue = 159;
    std::size_t max_attempts = 1000;  // association attempts per cue
    double rate_limit = 0.0;
    Mode mode = Mode::Live;
    std::string transcript_path;
    std::size_t cue_rating_samples = 1;
    std::size_t concurrency = 1;
    std::size_t max_retries = 5;
    std::uint32_t retry_backoff_ms = 250;
    std::uint64_t seed = 0;
};

// Probe every cue until the per-cue target is reached, collect cue ratings,
// and assemble the corpus. In record mode every exchange is appended to the
// transcript; in replay mode the transcript is the only source.
std::pair<Corpus, CampaignStats> collect_corpus(const ProbeConfig& config,
                                                const std::vector<CueWord>& cues);

// Same, with an externally supplied transport (used by tests and replay).
std::pair<Corpus, CampaignStats> collect_corpus(
    const ProbeConfig& config, const std::vector<CueWord>& cues, ChatTransport& transport,
    const std::function<void(const Exchange&)>& on_exchange = {});

}  // namespace bfmn
