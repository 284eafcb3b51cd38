#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace geneqa::prompt {

// The six prompt building blocks: two API documentations and four worked
// API-call demonstrations.
enum class ComponentId { Dc1, Dc2, Dm1, Dm2, Dm3, Dm4 };

inline constexpr ComponentId kCanonicalOrder[] = {ComponentId::Dc1, ComponentId::Dc2,
                                                  ComponentId::Dm1, ComponentId::Dm2,
                                                  ComponentId::Dm3, ComponentId::Dm4};

enum class ComponentKind { documentation, demonstration };

std::string to_string(ComponentId id);
ComponentId component_id_from_string(const std::string& s);
ComponentKind component_kind(ComponentId id);

// Immutable prompt asset. Demonstration bodies must contain at least one
// [URL]->[result] pair and end with an "Answer: ..." line.
struct PromptComponent {
    ComponentId id;
    ComponentKind kind;
    std::string body;
};

inline constexpr const char* kDefaultInstruction =
    "Your task is to use NCBI APIs to answer genomic questions.";

inline constexpr const char* kCotSuffix =
    "Let's decompose the question to sub-questions and solve them step by step.";

// Which components compose the prompt, in canonical order, plus the
// instruction header and the chain-of-thought toggle.
struct PromptConfig {
    std::vector<ComponentId> include;
    std::string instruction;  // empty selects the library's instruction asset
    bool cot_suffix_enabled = false;

    // Stable identifier recorded in transcripts and reports.
    std::string id;

    std::vector<std::string> include_names() const;
    bool includes(ComponentId id) const;
};

// Named presets: the whole set, the two-demonstration slim set, leave-one-out
// ablations and single-component probes.
PromptConfig preset_full();
PromptConfig preset_slim();
PromptConfig preset_ablate_without(ComponentId id);
PromptConfig preset_probe_only(ComponentId id);

// Parses "full", "slim", "no-<comp>" and "only-<comp>".
PromptConfig preset_from_name(const std::string& name);

// Loads the component bodies from a directory holding one plain-text file
// per component (dc1.txt ... dm4.txt) plus instruction.txt.
class PromptLibrary {
public:
    static PromptLibrary load_from_dir(const std::string& dir);

    const PromptComponent& component(ComponentId id) const;
    const std::string& instruction() const { return instruction_; }

    // instruction + blank-line-joined included bodies + "Question: ...".
    // Deterministic for fixed inputs; distinct includes give distinct output.
    std::string assemble(const PromptConfig& config, const std::string& question) const;

    // Paths of the loaded asset files (for provenance hashing).
    const std::map<std::string, std::string>& asset_files() const { return asset_files_; }

private:
    std::string instruction_;
    std::map<ComponentId, PromptComponent> components_;
    std::map<std::string, std::string> asset_files_;  // name -> path
};

// Task families that have a demonstration drawn from them. Used to mark
// one-shot vs zero-shot results per task kind; kinds without a matching
// demonstration are zero-shot under every config.
std::optional<ComponentId> demonstration_for_task_kind(const std::string& task_kind);
bool is_one_shot(const std::string& task_kind, const PromptConfig& config);

}  // namespace geneqa::prompt
