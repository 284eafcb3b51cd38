#pragma once

#include <memory>
#include <optional>
#include <string>

#include "geneqa/agent/backend.hpp"
#include "geneqa/agent/decode_loop.hpp"
#include "geneqa/ncbi/client.hpp"
#include "geneqa/prompt/prompt_kit.hpp"
#include "geneqa/replay/cassette.hpp"
#include "geneqa/replay/script.hpp"

namespace geneqa::cli {

enum class BackendSel { live, scripted };
enum class TransportSel { live, replay, record };

// Everything a command needs to assemble a running system.
struct RunConfig {
    std::string preset = "full";
    BackendSel backend = BackendSel::scripted;
    TransportSel transport = TransportSel::replay;
    std::string cassette_path;
    std::string script_path;
    std::string tasks_path;
    std::string prompts_dir = "prompts";
    std::string out_dir = "out";
    bool cot = false;
    int parallel = 1;
    std::int64_t max_wall_ms = 0;  // 0 keeps the budget default
    agent::SessionBudget budget;

    void apply_overrides() {
        if (max_wall_ms > 0) budget.max_wall_time = std::chrono::milliseconds(max_wall_ms);
    }

    // Throws ConfigError on inconsistent selections (e.g. scripted backend
    // without a script, replay transport without a cassette).
    void validate() const;

    bool deterministic() const {
        return backend == BackendSel::scripted && transport != TransportSel::live;
    }
};

std::string to_string(BackendSel b);
std::string to_string(TransportSel t);

// Wired-up dependencies shared by the commands.
struct Runtime {
    prompt::PromptLibrary library;
    std::shared_ptr<ncbi::Transport> transport;
    std::shared_ptr<ncbi::NcbiClient> client;
    std::optional<replay::ScriptBundle> bundle;  // scripted backend source
};

Runtime build_runtime(const RunConfig& config);

// Backend for one session; scripted backends are per-session (they hold a
// playback position), the live backend is stateless and shared.
std::unique_ptr<agent::CompletionBackend> make_backend(const RunConfig& config,
                                                       const Runtime& runtime,
                                                       const std::string& question,
                                                       const prompt::PromptConfig& prompt_config);

}  // namespace geneqa::cli
