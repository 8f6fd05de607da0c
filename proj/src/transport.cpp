#include "bfmn/transport.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <thread>

#include "bfmn/errors.hpp"

#include <httplib.h>
#include <json.hpp>

namespace bfmn {

using nlohmann::json;

std::string now_utc_iso8601() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const auto micros = duration_cast<microseconds>(now.time_since_epoch()) % 1000000;
    const std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                  tm.tm_sec, static_cast<int>(micros.count()));
    return buf;
}

std::string exchange_to_jsonl(const Exchange& e) {
    json j;
    j["sequence"] = e.sequence;
    j["cue"] = e.cue;
    j["prompt"] = e.prompt;
    j["raw_reply"] = e.raw_reply;
    j["model_id"] = e.model_id;
    j["timestamp"] = e.timestamp;
    j["parse_status"] = e.parse_status;
    return j.dump();
}

Exchange exchange_from_jsonl(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        throw FormatError(std::string("bad transcript line: ") + ex.what());
    }
    Exchange e;
    e.sequence = j.value("sequence", std::uint64_t{0});
    e.cue = j.value("cue", "");
    e.prompt = j.value("prompt", "");
    e.raw_reply = j.value("raw_reply", "");
    e.model_id = j.value("model_id", "");
    e.timestamp = j.value("timestamp", "");
    e.parse_status = j.value("parse_status", "");
    return e;
}

std::vector<Exchange> load_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open transcript: " + path);
    std::vector<Exchange> exchanges;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        exchanges.push_back(exchange_from_jsonl(line));
    }
    return exchanges;
}

ReplayTransport::ReplayTransport(const std::string& transcript_path)
    : ReplayTransport(load_transcript(transcript_path)) {}

ReplayTransport::ReplayTransport(const std::vector<Exchange>& exchanges) {
    for (const Exchange& e : exchanges) {
        by_prompt_[e.prompt].push_back({e.raw_reply, e.timestamp, e.model_id});
        if (default_model_id_.empty()) default_model_id_ = e.model_id;
        if (first_timestamp_.empty()) first_timestamp_ = e.timestamp;
    }
}

Completion ReplayTransport::complete(const std::string& prompt) {
    std::scoped_lock lock(mutex_);
    auto it = by_prompt_.find(prompt);
    if (it == by_prompt_.end() || it->second.empty())
        throw ReplayExhausted("transcript has no further replies for prompt: " +
                              prompt.substr(0, 60) + "...");
    Completion c = std::move(it->second.front());
    it->second.pop_front();
    return c;
}

// ---------------------------------------------------------------------------

struct HttpChatTransport::Impl {
    HttpTransportOptions options;
    std::string base;  // scheme://host[:port]
    std::string path;
    std::mutex pacing_mutex;
    std::chrono::steady_clock::time_point last_request{};

    explicit Impl(HttpTransportOptions opts) : options(std::move(opts)) {
        const std::string& url = options.endpoint_url;
        if (url.empty()) throw UsageError("live probing requires --endpoint");
        auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw UsageError("endpoint URL must include a scheme: " + url);
        auto path_begin = url.find('/', scheme_end + 3);
        if (path_begin == std::string::npos) {
            base = url;
            path = "/v1/chat/completions";
        } else {
            base = url.substr(0, path_begin);
            path = url.substr(path_begin);
        }
    }

    void pace() {
        if (options.rate_limit <= 0.0) return;
        std::scoped_lock lock(pacing_mutex);
        const auto interval = std::chrono::duration<double>(1.0 / options.rate_limit);
        const auto now = std::chrono::steady_clock::now();
        if (last_request.time_since_epoch().count() != 0) {
            const auto next = last_request +
                              std::chrono::duration_cast<std::chrono::steady_clock::duration>(interval);
            if (next > now) std::this_thread::sleep_for(next - now);
        }
        last_request = std::chrono::steady_clock::now();
    }

    Completion request_once(const std::string& prompt, std::string& error) {
        pace();
        httplib::Client client(base);
        client.set_connection_timeout(30, 0);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!options.api_key.empty())
            headers.emplace("Authorization", "Bearer " + options.api_key);

        json body;
        body["model"] = options.model_id;
        body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
        body["temperature"] = options.temperature;

        auto res = client.Post(path, headers, body.dump(), "application/json");
        if (!res) {
            error = "transport failure: " + httplib::to_string(res.error());
            return {};
        }
        if (res->status == 429 || res->status >= 500) {
            error = "HTTP " + std::to_string(res->status);
            return {};
        }
        if (res->status != 200)
            throw EndpointError("endpoint returned HTTP " + std::to_string(res->status) + ": " +
                                res->body.substr(0, 200));
        try {
            json reply = json::parse(res->body);
            Completion c;
            c.raw_reply = reply.at("choices").at(0).at("message").at("content").get<std::string>();
            c.model_id = reply.value("model", options.model_id);
            c.timestamp = now_utc_iso8601();
            return c;
        } catch (const json::exception& ex) {
            throw EndpointError(std::string("malformed completion response: ") + ex.what());
        }
    }
};

HttpChatTransport::HttpChatTransport(HttpTransportOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

HttpChatTransport::~HttpChatTransport() = default;

Completion HttpChatTransport::complete(const std::string& prompt) {
    std::string last_error;
    std::uint32_t backoff_ms = impl_->options.retry_backoff_ms;
    for (std::size_t attempt = 0; attempt <= impl_->options.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        std::string error;
        Completion c = impl_->request_once(prompt, error);
        if (error.empty()) return c;
        last_error = error;
    }
    throw EndpointError("request failed after " + std::to_string(impl_->options.max_retries + 1) +
                        " attempts: " + last_error);
}

}  // namespace bfmn
