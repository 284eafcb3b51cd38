#pragma once

#include <string>
#include <vector>

#include "geneqa/cli/run_config.hpp"
#include "geneqa/eval/report.hpp"

namespace geneqa::cli {

// Answers one question, printing the interleaved transcript and the final
// answer. Returns the process exit code (0 only when answered).
int cmd_ask(const std::string& question, const RunConfig& config);

// Runs every instance of the task file, scores the answers and writes the
// grouped score table, the error-count table, a JSON summary and one
// transcript file per instance under the output directory. Completed
// instances (matching transcript file present) are skipped on re-runs.
int cmd_bench(const RunConfig& config);

// Re-runs the benchmark under every leave-one-out ablation and every
// single-component probe, then writes a config x task score matrix with
// deltas against the full prompt.
int cmd_ablate(const RunConfig& config);

// Shared by bench and ablate; returns scored results for one prompt config.
std::vector<eval::InstanceResult> run_taskset(const RunConfig& config, const Runtime& runtime,
                                              const eval::TaskSet& tasks,
                                              const prompt::PromptConfig& prompt_config,
                                              const std::string& transcript_dir);

}  // namespace geneqa::cli
