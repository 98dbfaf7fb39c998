#include "karelgs/llm_client.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace karelgs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "http://host:port/path" -> (scheme://host:port, /path)
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    std::size_t scheme = endpoint.find("://");
    std::size_t path_start =
        endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {endpoint, "/v1/chat/completions"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

} // namespace

LlmClient::LlmClient(LlmClientConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.fixture_mode() && !cfg_.endpoint.empty())
        throw std::invalid_argument("configure either an endpoint or a fixture dir, not both");
    if (!cfg_.fixture_mode() && cfg_.endpoint.empty())
        throw std::invalid_argument("configure an endpoint or a fixture dir");
    if (cfg_.fixture_mode()) {
        for (const auto& entry : fs::directory_iterator(cfg_.fixture_dir)) {
            if (entry.is_regular_file()) fixture_files_.push_back(entry.path().string());
        }
        std::sort(fixture_files_.begin(), fixture_files_.end());
    }
}

void LlmClient::journal(const PromptBundle& bundle, int request_index,
                        const std::string& response) {
    if (cfg_.journal_dir.empty()) return;
    fs::create_directories(cfg_.journal_dir);
    json j;
    j["mode"] = prompt_mode_name(bundle.mode);
    j["model"] = cfg_.model;
    j["temperature"] = cfg_.temperature;
    j["top_p"] = cfg_.top_p;
    j["request_index"] = request_index;
    j["system"] = bundle.system;
    j["user"] = bundle.user;
    j["response"] = response;
    char name[32];
    std::snprintf(name, sizeof(name), "request_%05d.json", journal_counter_++);
    std::ofstream out(fs::path(cfg_.journal_dir) / name);
    out << j.dump(2) << '\n';
}

std::string LlmClient::fetch_live(const PromptBundle& bundle, int request_index) {
    auto [host, path] = split_endpoint(cfg_.endpoint);
    json payload;
    payload["model"] = cfg_.model;
    payload["temperature"] = cfg_.temperature;
    payload["top_p"] = cfg_.top_p;
    payload["messages"] = json::array({
        json{{"role", "system"}, {"content", bundle.system}},
        json{{"role", "user"}, {"content", bundle.user}},
    });
    std::string body = payload.dump();

    std::string last_error;
    for (int attempt = 0; attempt < cfg_.max_attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100 * (1 << (attempt - 1))));
        }
        httplib::Client client(host);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!cfg_.api_key_env.empty()) {
            if (const char* key = std::getenv(cfg_.api_key_env.c_str()))
                headers.emplace("Authorization", std::string("Bearer ") + key);
        }
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        try {
            json parsed = json::parse(res->body);
            return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            last_error = std::string("malformed response body: ") + e.what();
        }
    }
    throw TransportError("request " + std::to_string(request_index) + " failed after " +
                         std::to_string(cfg_.max_attempts) + " attempts: " + last_error);
}

std::vector<std::string> LlmClient::request_programs(const PromptBundle& bundle, int count) {
    std::vector<std::string> responses;
    responses.reserve(static_cast<std::size_t>(count));
    if (cfg_.fixture_mode()) {
        for (int i = 0; i < count; ++i) {
            if (fixture_cursor_ >= static_cast<int>(fixture_files_.size()))
                throw FixtureExhausted("fixture dir " + cfg_.fixture_dir + " has only " +
                                       std::to_string(fixture_files_.size()) + " responses");
            std::string text = read_file(fixture_files_[static_cast<std::size_t>(fixture_cursor_)]);
            ++fixture_cursor_;
            journal(bundle, i, text);
            responses.push_back(std::move(text));
        }
        return responses;
    }
    // live mode: up to cfg_.parallelism concurrent requests, results kept in
    // request-index order
    int workers = std::clamp(cfg_.parallelism, 1, count > 0 ? count : 1);
    responses.assign(static_cast<std::size_t>(count), {});
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                responses[static_cast<std::size_t>(i)] = fetch_live(bundle, i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    for (int i = 0; i < count; ++i) {
        if (errors[static_cast<std::size_t>(i)])
            std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
        journal(bundle, i, responses[static_cast<std::size_t>(i)]);
    }
    return responses;
}

} // namespace karelgs
