#pragma once

#include <string>

#include "geneqa/agent/backend.hpp"

namespace geneqa::agent {

// Completion backend over an OpenAI-style /completions endpoint, configured
// by LLM_BASE_URL, LLM_MODEL and LLM_API_KEY. Requests run at temperature 0
// and return bounded chunks; trigger detection happens in the decode loop,
// so no server-side stop sequences are used (they would swallow the "->").
class HttpCompletionBackend : public CompletionBackend {
public:
    struct Options {
        std::string base_url;
        std::string model;
        std::string api_key;
        int max_tokens_per_chunk = 256;
    };

    // Reads the LLM_* environment variables; throws ConfigError if unset.
    static Options options_from_env();

    explicit HttpCompletionBackend(Options options);

    std::string next_chunk(const std::string& prefix) override;
    std::string id() const override { return "live:" + options_.model; }

private:
    Options options_;
};

}  // namespace geneqa::agent
