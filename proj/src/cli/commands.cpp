#include "geneqa/cli/commands.hpp"

#include <atomic>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::shared_ptr<util::Clock> clock_for(const RunConfig& config) {
    if (config.deterministic()) return std::make_shared<util::LogicalClock>();
    return util::system_clock();
}

prompt::PromptConfig prompt_config_for(const RunConfig& config) {
    auto prompt_config = prompt::preset_from_name(config.preset);
    prompt_config.cot_suffix_enabled = config.cot;
    return prompt_config;
}

agent::AgentTranscript run_one(const RunConfig& config, const Runtime& runtime,
                               const prompt::PromptConfig& prompt_config,
                               const std::string& question) {
    auto backend = make_backend(config, runtime, question, prompt_config);
    return agent::run_session(question, prompt_config, runtime.library, *backend,
                              *runtime.client, config.budget, clock_for(config));
}

std::string transcript_file_name(const eval::TaskInstance& instance) {
    return eval::to_string(instance.kind) + "_" + util::fnv1a64_hex(instance.question) + ".json";
}

eval::RunProvenance provenance_for(const RunConfig& config, const Runtime& runtime,
                                   const prompt::PromptConfig& prompt_config) {
    eval::RunProvenance p;
    p.preset_id = prompt_config.id + (prompt_config.cot_suffix_enabled ? "+cot" : "");
    p.backend_id = to_string(config.backend);
    p.transport_mode = to_string(config.transport);
    auto hash_file = [&](const std::string& label, const std::string& path) {
        if (path.empty()) return;
        p.fixture_hashes[label] = util::fnv1a64_hex(util::read_file(path));
    };
    hash_file("tasks", config.tasks_path);
    if (config.transport == TransportSel::replay) hash_file("cassette", config.cassette_path);
    if (config.backend == BackendSel::scripted) hash_file("script", config.script_path);
    for (const auto& [name, path] : runtime.library.asset_files()) hash_file("prompt:" + name, path);
    return p;
}

}  // namespace

std::vector<eval::InstanceResult> run_taskset(const RunConfig& config, const Runtime& runtime,
                                              const eval::TaskSet& tasks,
                                              const prompt::PromptConfig& prompt_config,
                                              const std::string& transcript_dir) {
    fs::create_directories(transcript_dir);
    std::vector<eval::InstanceResult> results(tasks.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t index = next.fetch_add(1);
            if (index >= tasks.size()) return;
            const auto& instance = tasks.instances[index];
            const std::string file = transcript_file_name(instance);
            const std::string path = transcript_dir + "/" + file;

            agent::AgentTranscript transcript;
            if (fs::exists(path)) {
                transcript = agent::transcript_from_json(util::read_file(path));
            } else {
                try {
                    transcript = run_one(config, runtime, prompt_config, instance.question);
                    util::write_file(path, agent::transcript_to_json(transcript));
                } catch (const std::exception& e) {
                    // Session never started (e.g. no script for this config).
                    // Keep an in-memory failure record but do not persist it,
                    // so a fixed configuration re-runs the instance.
                    transcript = agent::AgentTranscript{};
                    transcript.question = instance.question;
                    transcript.prompt_config_id = prompt_config.id;
                    transcript.termination = agent::Termination::backend_error;
                    transcript.error_note = e.what();
                }
            }

            eval::InstanceResult result;
            result.kind = instance.kind;
            result.question = instance.question;
            result.prediction = transcript.final_answer.value_or("");
            result.score = eval::score_task(instance, result.prediction);
            result.error = eval::classify_error(transcript, instance, result.score);
            result.one_shot = prompt::is_one_shot(eval::to_string(instance.kind), prompt_config);
            result.transcript_file = file;
            results[index] = std::move(result);
        }
    };

    int threads = std::min<int>(config.parallel, static_cast<int>(tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

int cmd_ask(const std::string& question, const RunConfig& config) {
    Runtime runtime = build_runtime(config);
    auto prompt_config = prompt_config_for(config);
    agent::AgentTranscript transcript = run_one(config, runtime, prompt_config, question);

    std::cout << "=== session (" << prompt_config.id << ", " << to_string(config.backend) << "+"
              << to_string(config.transport) << ") ===\n";
    std::cout << "Question: " << question << "\n\n";
    std::cout << transcript.generated_text() << "\n";
    std::cout << "=== result ===\n";
    std::cout << "termination: " << agent::to_string(transcript.termination) << "\n";
    std::cout << "api calls:   " << transcript.api_calls.size() << "\n";
    for (const auto& call : transcript.api_calls)
        std::cout << "  [" << call.transport << "] " << call.url << "\n";
    if (!transcript.sub_answers.empty()) {
        std::cout << "sub-answers:\n";
        for (const auto& answer : transcript.sub_answers) std::cout << "  " << answer << "\n";
    }
    if (!transcript.error_note.empty()) std::cout << "note: " << transcript.error_note << "\n";
    if (transcript.final_answer) {
        std::cout << "answer: " << *transcript.final_answer << "\n";
        return 0;
    }
    std::cout << "answer: <none>\n";
    return 2;
}

namespace {

void write_report_files(const std::string& out_dir, const eval::ScoreReport& report,
                        const std::vector<eval::InstanceResult>& results) {
    util::write_file(out_dir + "/report.txt", eval::render_score_table(report));
    util::write_file(out_dir + "/errors.txt", eval::render_error_table(report));
    util::write_file(out_dir + "/report.json", eval::report_to_json(report, results));
}

eval::ScoreReport build_report(const RunConfig& config, const Runtime& runtime,
                               const prompt::PromptConfig& prompt_config,
                               const std::vector<eval::InstanceResult>& results) {
    std::map<eval::TaskKind, bool> one_shot;
    for (const auto& r : results)
        one_shot[r.kind] = prompt::is_one_shot(eval::to_string(r.kind), prompt_config);
    eval::ScoreReport report = eval::aggregate(results, one_shot);
    report.provenance = provenance_for(config, runtime, prompt_config);
    return report;
}

}  // namespace

int cmd_bench(const RunConfig& config) {
    if (config.tasks_path.empty()) throw ConfigError("bench requires --tasks");
    Runtime runtime = build_runtime(config);
    auto prompt_config = prompt_config_for(config);
    eval::TaskSet tasks = eval::load_taskset(config.tasks_path);
    if (tasks.size() == 0) throw ConfigError("task file is empty: " + config.tasks_path);

    std::cout << "Loaded " << tasks.size() << " task instances:\n";
    for (const auto& [kind, count] : tasks.counts())
        std::cout << "  " << eval::to_string(kind) << ": " << count << "\n";

    fs::create_directories(config.out_dir);
    auto results = run_taskset(config, runtime, tasks, prompt_config,
                               config.out_dir + "/transcripts");
    eval::ScoreReport report = build_report(config, runtime, prompt_config, results);
    write_report_files(config.out_dir, report, results);

    std::cout << "\n" << eval::render_score_table(report) << "\n"
              << eval::render_error_table(report) << "\nreports written to " << config.out_dir
              << "\n";
    return 0;
}

int cmd_ablate(const RunConfig& config) {
    if (config.tasks_path.empty()) throw ConfigError("ablate requires --tasks");
    Runtime runtime = build_runtime(config);
    eval::TaskSet tasks = eval::load_taskset(config.tasks_path);
    if (tasks.size() == 0) throw ConfigError("task file is empty: " + config.tasks_path);
    fs::create_directories(config.out_dir);

    // The full prompt is the baseline; every component is then removed once
    // and probed alone once.
    std::vector<prompt::PromptConfig> configs;
    configs.push_back(prompt::preset_full());
    for (prompt::ComponentId id : prompt::kCanonicalOrder)
        configs.push_back(prompt::preset_ablate_without(id));
    for (prompt::ComponentId id : prompt::kCanonicalOrder)
        configs.push_back(prompt::preset_probe_only(id));

    std::vector<eval::TaskKind> kinds;
    for (const auto& [kind, count] : tasks.counts()) {
        (void)count;
        kinds.push_back(kind);
    }

    std::map<std::string, std::map<eval::TaskKind, double>> matrix;
    for (auto prompt_config : configs) {
        prompt_config.cot_suffix_enabled = config.cot;
        const std::string config_dir = config.out_dir + "/" + prompt_config.id;
        fs::create_directories(config_dir);
        auto results = run_taskset(config, runtime, tasks, prompt_config,
                                   config_dir + "/transcripts");
        eval::ScoreReport report = build_report(config, runtime, prompt_config, results);
        write_report_files(config_dir, report, results);
        matrix[prompt_config.id] = report.per_task;
    }

    // Render config x task matrix plus deltas against the full baseline.
    std::ostringstream text;
    text << std::left;
    text << "config        ";
    for (auto kind : kinds) text << " " << eval::to_string(kind);
    text << "\n";
    json matrix_json = json::object();
    for (const auto& pc : configs) {
        const auto& row = matrix[pc.id];
        text << pc.id;
        for (size_t pad = pc.id.size(); pad < 14; ++pad) text << ' ';
        json row_json = json::object();
        for (auto kind : kinds) {
            double value = row.count(kind) ? row.at(kind) : 0.0;
            double delta = value - (matrix["full"].count(kind) ? matrix["full"].at(kind) : 0.0);
            text << " " << util::format_fixed(value, 2) << " ("
                 << (delta >= 0 ? "+" : "") << util::format_fixed(delta, 2) << ")";
            row_json[eval::to_string(kind)] = {{"score", value}, {"delta_vs_full", delta}};
        }
        text << "\n";
        matrix_json[pc.id] = std::move(row_json);
    }
    util::write_file(config.out_dir + "/matrix.txt", text.str());
    util::write_file(config.out_dir + "/matrix.json", matrix_json.dump(2) + "\n");

    std::cout << text.str() << "\nmatrix written to " << config.out_dir << "\n";
    return 0;
}

}  // namespace geneqa::cli
