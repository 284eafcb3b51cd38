#include "geneqa/prompt/prompt_kit.hpp"

#include <algorithm>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::prompt {

std::string to_string(ComponentId id) {
    switch (id) {
        case ComponentId::Dc1: return "Dc1";
        case ComponentId::Dc2: return "Dc2";
        case ComponentId::Dm1: return "Dm1";
        case ComponentId::Dm2: return "Dm2";
        case ComponentId::Dm3: return "Dm3";
        case ComponentId::Dm4: return "Dm4";
    }
    return "Dc1";
}

ComponentId component_id_from_string(const std::string& s) {
    for (ComponentId id : kCanonicalOrder)
        if (to_string(id) == s) return id;
    throw ConfigError("unknown prompt component: " + s);
}

ComponentKind component_kind(ComponentId id) {
    return (id == ComponentId::Dc1 || id == ComponentId::Dc2) ? ComponentKind::documentation
                                                              : ComponentKind::demonstration;
}

std::vector<std::string> PromptConfig::include_names() const {
    std::vector<std::string> out;
    out.reserve(include.size());
    for (ComponentId id : include) out.push_back(to_string(id));
    return out;
}

bool PromptConfig::includes(ComponentId id) const {
    return std::find(include.begin(), include.end(), id) != include.end();
}

namespace {

// Filters the canonical order by membership, which also deduplicates.
std::vector<ComponentId> canonicalize(const std::vector<ComponentId>& wanted) {
    std::vector<ComponentId> out;
    for (ComponentId id : kCanonicalOrder)
        if (std::find(wanted.begin(), wanted.end(), id) != wanted.end()) out.push_back(id);
    return out;
}

PromptConfig make_config(std::vector<ComponentId> include, std::string id) {
    PromptConfig config;
    config.include = canonicalize(include);
    config.id = std::move(id);
    return config;
}

}  // namespace

PromptConfig preset_full() {
    return make_config({ComponentId::Dc1, ComponentId::Dc2, ComponentId::Dm1, ComponentId::Dm2,
                        ComponentId::Dm3, ComponentId::Dm4},
                       "full");
}

PromptConfig preset_slim() {
    return make_config({ComponentId::Dm1, ComponentId::Dm4}, "slim");
}

PromptConfig preset_ablate_without(ComponentId id) {
    auto config = preset_full();
    config.include.erase(std::remove(config.include.begin(), config.include.end(), id),
                         config.include.end());
    config.id = "no-" + to_string(id);
    return config;
}

PromptConfig preset_probe_only(ComponentId id) {
    return make_config({id}, "only-" + to_string(id));
}

PromptConfig preset_from_name(const std::string& name) {
    if (name == "full") return preset_full();
    if (name == "slim") return preset_slim();
    if (util::starts_with(name, "no-"))
        return preset_ablate_without(component_id_from_string(name.substr(3)));
    if (util::starts_with(name, "only-"))
        return preset_probe_only(component_id_from_string(name.substr(5)));
    throw ConfigError("unknown prompt preset: " + name);
}

namespace {

std::string asset_file_name(ComponentId id) {
    return util::to_lower(to_string(id)) + ".txt";
}

// Asset files end with a trailing newline like any text file; the body is
// the content without that terminator.
std::string body_from_file(const std::string& raw) {
    std::string body = raw;
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return body;
}

void validate_component(const PromptComponent& component) {
    const std::string name = to_string(component.id);
    if (component.body.empty()) throw LoadError("prompt component " + name + " is empty");
    if (component.kind == ComponentKind::demonstration) {
        if (component.body.find("]->[") == std::string::npos)
            throw LoadError("demonstration " + name + " has no [URL]->[result] pair");
        auto last_line_start = component.body.rfind('\n');
        std::string last_line = last_line_start == std::string::npos
                                    ? component.body
                                    : component.body.substr(last_line_start + 1);
        if (!util::starts_with(last_line, "Answer: "))
            throw LoadError("demonstration " + name + " does not end with an Answer line");
    }
}

}  // namespace

PromptLibrary PromptLibrary::load_from_dir(const std::string& dir) {
    PromptLibrary lib;
    const std::string instruction_path = dir + "/instruction.txt";
    lib.instruction_ = body_from_file(util::read_file(instruction_path));
    if (lib.instruction_.empty()) throw LoadError("instruction.txt is empty");
    lib.asset_files_["instruction"] = instruction_path;

    for (ComponentId id : kCanonicalOrder) {
        const std::string path = dir + "/" + asset_file_name(id);
        PromptComponent component{id, component_kind(id), body_from_file(util::read_file(path))};
        validate_component(component);
        lib.asset_files_[to_string(id)] = path;
        lib.components_.emplace(id, std::move(component));
    }
    return lib;
}

const PromptComponent& PromptLibrary::component(ComponentId id) const {
    return components_.at(id);
}

std::string PromptLibrary::assemble(const PromptConfig& config, const std::string& question) const {
    if (question.empty()) throw ConfigError("question must be non-empty");

    std::string instruction = config.instruction.empty() ? instruction_ : config.instruction;
    std::string out = instruction;
    for (ComponentId id : canonicalize(config.include)) {
        out += "\n\n";
        out += components_.at(id).body;
    }
    out += "\n\nQuestion: " + question;
    if (config.cot_suffix_enabled) {
        out += " ";
        out += kCotSuffix;
    }
    out += "\n";
    return out;
}

std::optional<ComponentId> demonstration_for_task_kind(const std::string& task_kind) {
    if (task_kind == "gene_alias") return ComponentId::Dm1;
    if (task_kind == "gene_snp_association") return ComponentId::Dm2;
    if (task_kind == "gene_disease_association") return ComponentId::Dm3;
    if (task_kind == "dna_to_human_genome") return ComponentId::Dm4;
    return std::nullopt;
}

bool is_one_shot(const std::string& task_kind, const PromptConfig& config) {
    auto demo = demonstration_for_task_kind(task_kind);
    return demo && config.includes(*demo);
}

}  // namespace geneqa::prompt
