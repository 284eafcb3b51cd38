#include "geneqa/cli/run_config.hpp"

#include <cstdlib>

#include "geneqa/agent/llm_backend.hpp"
#include "geneqa/errors.hpp"
#include "geneqa/ncbi/http_transport.hpp"

namespace geneqa::cli {

std::string to_string(BackendSel b) {
    return b == BackendSel::live ? "live" : "scripted";
}

std::string to_string(TransportSel t) {
    switch (t) {
        case TransportSel::live: return "live";
        case TransportSel::replay: return "replay";
        case TransportSel::record: return "record";
    }
    return "replay";
}

void RunConfig::validate() const {
    if (backend == BackendSel::scripted && script_path.empty())
        throw ConfigError("scripted backend requires --script");
    if (transport == TransportSel::replay && cassette_path.empty())
        throw ConfigError("replay transport requires --cassette");
    if (transport == TransportSel::record && cassette_path.empty())
        throw ConfigError("record transport requires --cassette (output path)");
    if (parallel < 1) throw ConfigError("--parallel must be >= 1");
    budget.validate();
    prompt::preset_from_name(preset);  // throws on unknown preset
}

namespace {

ncbi::RateLimitPolicy policy_for(const RunConfig& config) {
    ncbi::RateLimitPolicy policy;
    if (config.transport != TransportSel::live) {
        // Replayed responses never hit the network; keep tests quick.
        policy.max_requests_per_second = 10'000.0;
        policy.blast_poll_interval = std::chrono::milliseconds(1);
        policy.blast_poll_timeout = std::chrono::milliseconds(1'000);
    } else if (std::getenv("NCBI_API_KEY") && *std::getenv("NCBI_API_KEY")) {
        policy.max_requests_per_second = 10.0;  // keyed NCBI allowance
    }
    return policy;
}

}  // namespace

Runtime build_runtime(const RunConfig& config) {
    config.validate();

    Runtime runtime{prompt::PromptLibrary::load_from_dir(config.prompts_dir), nullptr, nullptr,
                    std::nullopt};

    switch (config.transport) {
        case TransportSel::live:
            runtime.transport = std::make_shared<ncbi::HttpTransport>();
            break;
        case TransportSel::replay:
            runtime.transport = std::make_shared<replay::ReplayTransport>(
                replay::Cassette::load(config.cassette_path));
            break;
        case TransportSel::record:
            runtime.transport = std::make_shared<replay::RecordingTransport>(
                std::make_shared<ncbi::HttpTransport>(), config.cassette_path);
            break;
    }

    runtime.client = std::make_shared<ncbi::NcbiClient>(runtime.transport, policy_for(config));

    if (config.backend == BackendSel::scripted)
        runtime.bundle = replay::ScriptBundle::load_any(config.script_path);
    return runtime;
}

std::unique_ptr<agent::CompletionBackend> make_backend(const RunConfig& config,
                                                       const Runtime& runtime,
                                                       const std::string& question,
                                                       const prompt::PromptConfig& prompt_config) {
    if (config.backend == BackendSel::live) {
        return std::make_unique<agent::HttpCompletionBackend>(
            agent::HttpCompletionBackend::options_from_env());
    }
    auto script = runtime.bundle->resolve(question, prompt_config.include_names());
    if (!script)
        throw ConfigError("no script found for question: " + question +
                          " (config " + prompt_config.id + ")");
    return std::make_unique<replay::ScriptedBackend>(std::move(*script));
}

}  // namespace geneqa::cli
