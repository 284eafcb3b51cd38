#include <CLI11.hpp>
#include <iostream>

#include "geneqa/cli/commands.hpp"
#include "geneqa/errors.hpp"

namespace {

using geneqa::cli::BackendSel;
using geneqa::cli::RunConfig;
using geneqa::cli::TransportSel;

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--preset,--prompt-preset", config.preset,
                    "Prompt preset: full, slim, no-<comp>, only-<comp> (comp: Dc1..Dm4)");
    std::map<std::string, BackendSel> backends{{"live", BackendSel::live},
                                               {"scripted", BackendSel::scripted}};
    cmd->add_option("--backend", config.backend, "Completion backend")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
    std::map<std::string, TransportSel> transports{{"live", TransportSel::live},
                                                   {"replay", TransportSel::replay},
                                                   {"record", TransportSel::record}};
    cmd->add_option("--transport", config.transport, "NCBI transport")
        ->transform(CLI::CheckedTransformer(transports, CLI::ignore_case));
    cmd->add_option("--cassette", config.cassette_path, "Cassette file (replay/record)");
    cmd->add_option("--script", config.script_path, "Generation script or bundle (scripted)");
    cmd->add_option("--prompts-dir", config.prompts_dir, "Directory with prompt assets");
    cmd->add_flag("--cot", config.cot, "Append the sub-question decomposition suffix");
    cmd->add_option("--max-calls", config.budget.max_api_calls, "API call budget per session");
    cmd->add_option("--max-chars", config.budget.max_generated_chars,
                    "Generated character budget per session");
    cmd->add_option("--max-wall-ms", config.max_wall_ms,
                    "Wall-clock budget per session (milliseconds)");
    cmd->add_option("--splice-budget", config.budget.splice_token_budget,
                    "Token budget for one spliced API result");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tool-augmented genomics QA over NCBI E-utils and BLAST"};
    app.require_subcommand(1);

    RunConfig ask_config;
    std::string question;
    auto* ask = app.add_subcommand("ask", "Answer one question");
    ask->add_option("question", question, "The question to answer")->required();
    add_common_options(ask, ask_config);

    RunConfig bench_config;
    auto* bench = app.add_subcommand("bench", "Score a task file and write reports");
    bench->add_option("--tasks", bench_config.tasks_path, "Task file (JSON lines)")->required();
    bench->add_option("--out", bench_config.out_dir, "Output directory");
    bench->add_option("--parallel", bench_config.parallel, "Concurrent sessions");
    add_common_options(bench, bench_config);

    RunConfig ablate_config;
    auto* ablate = app.add_subcommand("ablate", "Component ablation/probing matrix");
    ablate->add_option("--tasks", ablate_config.tasks_path, "Task file (JSON lines)")->required();
    ablate->add_option("--out", ablate_config.out_dir, "Output directory");
    ablate->add_option("--parallel", ablate_config.parallel, "Concurrent sessions");
    add_common_options(ablate, ablate_config);

    CLI11_PARSE(app, argc, argv);

    ask_config.apply_overrides();
    bench_config.apply_overrides();
    ablate_config.apply_overrides();

    try {
        if (ask->parsed()) return geneqa::cli::cmd_ask(question, ask_config);
        if (bench->parsed()) return geneqa::cli::cmd_bench(bench_config);
        if (ablate->parsed()) return geneqa::cli::cmd_ablate(ablate_config);
    } catch (const geneqa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
