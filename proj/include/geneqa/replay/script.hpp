#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geneqa/agent/backend.hpp"

namespace geneqa::replay {

// One scripted emission. When expect_suffix is set, the backend checks the
// current prompt ends with it before emitting, which catches regressions in
// splicing and prompt assembly instead of silently producing garbage.
struct ScriptStep {
    std::string emit;
    std::optional<std::string> expect_suffix;
};

struct GenerationScript {
    std::vector<ScriptStep> steps;
};

// Deterministic completion backend replaying a fixed generation trace.
class ScriptedBackend : public agent::CompletionBackend {
public:
    explicit ScriptedBackend(GenerationScript script, std::string id = "scripted")
        : script_(std::move(script)), id_(std::move(id)) {}

    // Throws ScriptDesyncError on suffix mismatch, ScriptExhaustedError when
    // the session asks for more chunks than the script holds.
    std::string next_chunk(const std::string& prefix) override;
    std::string id() const override { return id_; }

    std::size_t steps_consumed() const { return next_; }

private:
    GenerationScript script_;
    std::string id_;
    std::size_t next_ = 0;
};

// A set of scripts for batch runs, selected by question. An entry may list
// required prompt components; given the active component set, the most
// specific entry whose requirements are all present wins. This lets one
// fixture bundle model behavior that depends on which demonstrations are
// in the prompt.
struct ScriptBundleEntry {
    std::string question;
    std::vector<std::string> required_components;
    GenerationScript script;
};

class ScriptBundle {
public:
    static ScriptBundle load(const std::string& path);

    // Accepts either a bundle file ({"scripts": ...}) or a single script
    // ({"steps": ...}); a single script matches every question.
    static ScriptBundle load_any(const std::string& path);

    void add(ScriptBundleEntry entry) { entries_.push_back(std::move(entry)); }

    // Returns the matching script, or nullopt when no entry fits. An entry
    // with an empty question matches any question; among fitting entries a
    // question match wins over a wildcard, then the largest satisfied
    // requirement set wins.
    std::optional<GenerationScript> resolve(const std::string& question,
                                            const std::vector<std::string>& included_components) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::vector<ScriptBundleEntry> entries_;
};

GenerationScript load_script(const std::string& path);
void save_script(const GenerationScript& script, const std::string& path);

}  // namespace geneqa::replay
