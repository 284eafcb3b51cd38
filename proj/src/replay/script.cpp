#include "geneqa/replay/script.hpp"

#include <algorithm>
#include <json.hpp>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::replay {

using nlohmann::json;

std::string ScriptedBackend::next_chunk(const std::string& prefix) {
    if (next_ >= script_.steps.size())
        throw ScriptExhaustedError("script exhausted after " + std::to_string(next_) + " steps");
    const ScriptStep& step = script_.steps[next_];
    if (step.expect_suffix && !util::ends_with(prefix, *step.expect_suffix)) {
        std::string tail = prefix.size() > 80 ? prefix.substr(prefix.size() - 80) : prefix;
        throw ScriptDesyncError("script step " + std::to_string(next_) +
                                " expected prompt suffix \"" + *step.expect_suffix +
                                "\" but prompt ends with \"" + tail + "\"");
    }
    ++next_;
    return step.emit;
}

namespace {

GenerationScript script_from_json(const json& steps) {
    GenerationScript script;
    for (const auto& item : steps) {
        ScriptStep step;
        step.emit = item.at("emit").get<std::string>();
        if (item.contains("expect_suffix"))
            step.expect_suffix = item["expect_suffix"].get<std::string>();
        script.steps.push_back(std::move(step));
    }
    return script;
}

}  // namespace

GenerationScript load_script(const std::string& path) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw LoadError("script " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
        throw LoadError("script " + path + ": expected {\"steps\": [...]}");
    return script_from_json(doc["steps"]);
}

void save_script(const GenerationScript& script, const std::string& path) {
    json steps = json::array();
    for (const auto& step : script.steps) {
        json item = {{"emit", step.emit}};
        if (step.expect_suffix) item["expect_suffix"] = *step.expect_suffix;
        steps.push_back(std::move(item));
    }
    util::write_file(path, json{{"steps", std::move(steps)}}.dump(2) + "\n");
}

ScriptBundle ScriptBundle::load(const std::string& path) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw LoadError("script bundle " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("scripts") || !doc["scripts"].is_array())
        throw LoadError("script bundle " + path + ": expected {\"scripts\": [...]}");

    ScriptBundle out;
    for (const auto& item : doc["scripts"]) {
        ScriptBundleEntry entry;
        entry.question = item.at("question").get<std::string>();
        if (item.contains("required_components"))
            entry.required_components =
                item["required_components"].get<std::vector<std::string>>();
        entry.script = script_from_json(item.at("steps"));
        out.add(std::move(entry));
    }
    return out;
}

ScriptBundle ScriptBundle::load_any(const std::string& path) {
    json doc;
    try {
        doc = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw LoadError("script " + path + ": " + e.what());
    }
    if (doc.is_object() && doc.contains("scripts")) return load(path);
    if (doc.is_object() && doc.contains("steps")) {
        ScriptBundle out;
        out.add(ScriptBundleEntry{"", {}, script_from_json(doc["steps"])});
        return out;
    }
    throw LoadError("script " + path + ": expected \"steps\" or \"scripts\"");
}

std::optional<GenerationScript> ScriptBundle::resolve(
    const std::string& question, const std::vector<std::string>& included_components) const {
    const ScriptBundleEntry* best = nullptr;
    auto rank = [](const ScriptBundleEntry& e) {
        return (e.question.empty() ? 0 : 1000) + static_cast<int>(e.required_components.size());
    };
    for (const auto& entry : entries_) {
        if (!entry.question.empty() && entry.question != question) continue;
        bool satisfied = std::all_of(
            entry.required_components.begin(), entry.required_components.end(),
            [&](const std::string& need) {
                return std::find(included_components.begin(), included_components.end(), need) !=
                       included_components.end();
            });
        if (!satisfied) continue;
        if (!best || rank(entry) > rank(*best)) best = &entry;
    }
    if (!best) return std::nullopt;
    return best->script;
}

}  // namespace geneqa::replay
