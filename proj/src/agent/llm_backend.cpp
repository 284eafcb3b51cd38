#ifdef GENEQA_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <cstdlib>
#include <json.hpp>

#include "geneqa/agent/llm_backend.hpp"
#include "geneqa/errors.hpp"

namespace geneqa::agent {

using nlohmann::json;

HttpCompletionBackend::Options HttpCompletionBackend::options_from_env() {
    Options options;
    const char* base = std::getenv("LLM_BASE_URL");
    const char* model = std::getenv("LLM_MODEL");
    const char* key = std::getenv("LLM_API_KEY");
    if (!base || !*base) throw ConfigError("LLM_BASE_URL is not set");
    if (!model || !*model) throw ConfigError("LLM_MODEL is not set");
    options.base_url = base;
    options.model = model;
    options.api_key = key ? key : "";
    return options;
}

HttpCompletionBackend::HttpCompletionBackend(Options options) : options_(std::move(options)) {
    if (options_.base_url.empty()) throw ConfigError("completion base URL is empty");
}

std::string HttpCompletionBackend::next_chunk(const std::string& prefix) {
    auto scheme_end = options_.base_url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("LLM_BASE_URL must include a scheme: " + options_.base_url);
    auto path_start = options_.base_url.find('/', scheme_end + 3);
    std::string origin =
        path_start == std::string::npos ? options_.base_url : options_.base_url.substr(0, path_start);
    std::string base_path =
        path_start == std::string::npos ? "" : options_.base_url.substr(path_start);

    httplib::Client client(origin);
    client.set_read_timeout(300, 0);
    httplib::Headers headers;
    if (!options_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + options_.api_key);

    json body = {{"model", options_.model},
                 {"prompt", prefix},
                 {"temperature", 0},
                 {"max_tokens", options_.max_tokens_per_chunk}};

    auto res = client.Post(base_path + "/completions", headers, body.dump(), "application/json");
    if (!res)
        throw TransportError("completion request failed: " + httplib::to_string(res.error()));
    if (res->status >= 400)
        throw StatusError(res->status, res->body, options_.base_url + "/completions");

    json parsed;
    try {
        parsed = json::parse(res->body);
    } catch (const json::exception& e) {
        throw TransportError(std::string("completion response is not JSON: ") + e.what());
    }
    if (!parsed.contains("choices") || parsed["choices"].empty())
        throw TransportError("completion response has no choices");
    return parsed["choices"][0].value("text", "");
}

}  // namespace geneqa::agent
