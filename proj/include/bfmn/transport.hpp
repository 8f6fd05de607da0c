#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace bfmn {

// One recorded prompt/reply pair. parse_status is one of: accepted,
// discarded_repetition, discarded_unparseable, rating_ok, rating_unparseable.
struct Exchange {
    std::uint64_t sequence = 0;
    std::string cue;
    std::string prompt;
    std::string raw_reply;
    std::string model_id;
    std::string timestamp;
    std::string parse_status;
};

struct Completion {
    std::string raw_reply;
    std::string timestamp;  // ISO-8601 UTC
    std::string model_id;
};

class ChatTransport {
  public:
    virtual ~ChatTransport() = default;
    virtual Completion complete(const std::string& prompt) = 0;
    virtual bool deterministic() const { return false; }
};

struct HttpTransportOptions {
    std::string endpoint_url;
    std::string model_id;
    std::string api_key;
    double temperature = 0.7;
    std::size_t max_retries = 5;
    std::uint32_t retry_backoff_ms = 250;  // doubles per retry
    double rate_limit = 0.0;               // requests/second, 0 = unlimited
};

// OpenAI-compatible chat-completions POST. One prompt per request, no
// conversation memory. Retries transport failures, 429 and 5xx with
// exponential backoff; throws EndpointError when retries are exhausted.
class HttpChatTransport : public ChatTransport {
  public:
    explicit HttpChatTransport(HttpTransportOptions options);
    ~HttpChatTransport() override;
    Completion complete(const std::string& prompt) override;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Replays a recorded transcript. Replies are keyed by prompt text and
// served in recorded order; requesting more replies for a prompt than the
// transcript holds throws ReplayExhausted.
class ReplayTransport : public ChatTransport {
  public:
    explicit ReplayTransport(const std::string& transcript_path);
    explicit ReplayTransport(const std::vector<Exchange>& exchanges);
    Completion complete(const std::string& prompt) override;
    bool deterministic() const override { return true; }
    const std::string& default_model_id() const { return default_model_id_; }
    const std::string& first_timestamp() const { return first_timestamp_; }

  private:
    std::map<std::string, std::deque<Completion>> by_prompt_;
    std::string default_model_id_;
    std::string first_timestamp_;
    std::mutex mutex_;
};

std::string now_utc_iso8601();

// Transcript JSON Lines IO.
std::string exchange_to_jsonl(const Exchange& e);
Exchange exchange_from_jsonl(const std::string& line);
std::vector<Exchange> load_transcript(const std::string& path);

}  // namespace bfmn
