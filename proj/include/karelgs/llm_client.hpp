#pragma once

#include "karelgs/prompts.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace karelgs {

struct LlmClientConfig {
    std::string endpoint;       // e.g. "http://localhost:8000/v1/chat/completions"
    std::string model = "gpt-4-turbo";
    double temperature = 1.0;
    double top_p = 1.0;
    std::string api_key_env = "OPENAI_API_KEY";
    std::string fixture_dir;    // offline replay mode when non-empty
    std::string journal_dir;    // every request/response pair is persisted here
    int max_attempts = 3;       // live-mode retries with exponential backoff
    int parallelism = 1;        // concurrent live requests

    bool fixture_mode() const { return !fixture_dir.empty(); }
};

class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

class FixtureExhausted : public std::runtime_error {
public:
    explicit FixtureExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Obtains `count` raw response texts for the prompt bundle. Fixture mode
// replays the files of the fixture directory in sorted-name order,
// deterministically, advancing an internal cursor across calls. Live mode
// issues independent chat-completion requests. In both modes every response
// is journaled (with request metadata) before it is returned.
class LlmClient {
public:
    explicit LlmClient(LlmClientConfig cfg);

    std::vector<std::string> request_programs(const PromptBundle& bundle, int count);

    const LlmClientConfig& config() const { return cfg_; }
    int fixture_cursor() const { return fixture_cursor_; }

private:
    std::string fetch_live(const PromptBundle& bundle, int request_index);
    void journal(const PromptBundle& bundle, int request_index, const std::string& response);

    LlmClientConfig cfg_;
    std::vector<std::string> fixture_files_; // sorted absolute paths
    int fixture_cursor_ = 0;
    int journal_counter_ = 0;
};

} // namespace karelgs
