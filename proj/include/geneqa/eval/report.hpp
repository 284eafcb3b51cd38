#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geneqa/eval/errors.hpp"
#include "geneqa/eval/scoring.hpp"
#include "geneqa/eval/tasks.hpp"

namespace geneqa::eval {

// One scored instance, ready for aggregation.
struct InstanceResult {
    TaskKind kind = TaskKind::gene_alias;
    std::string question;
    std::string prediction;
    Score score;
    ErrorClassification error;
    bool one_shot = false;
    std::string transcript_file;  // relative path, when persisted
};

// Where the numbers came from; recorded so reports are reproducible.
struct RunProvenance {
    std::string preset_id;
    std::string backend_id;
    std::string transport_mode;
    std::map<std::string, std::string> fixture_hashes;  // file -> fnv1a64
};

struct ScoreReport {
    std::map<TaskKind, double> per_task;                  // mean score per kind
    std::map<TaskGroup, double> per_group;                // four single-hop groups
    double macro_average = 0.0;                           // unweighted mean of per-task means
    std::map<TaskKind, std::map<ErrorType, int>> error_counts;
    std::map<TaskKind, bool> one_shot_flags;
    std::map<TaskKind, int> instance_counts;
    RunProvenance provenance;
};

// Per-task means, the four group averages and the macro average
// (unweighted mean of the per-task means). Throws on an empty input.
ScoreReport aggregate(const std::vector<InstanceResult>& results,
                      const std::map<TaskKind, bool>& one_shot_flags = {});

// Aggregation from already-computed per-task means (used to validate the
// formula against externally reported numbers).
ScoreReport aggregate_from_means(const std::map<TaskKind, double>& per_task_means,
                                 const std::map<TaskKind, bool>& one_shot_flags = {});

// Human-readable grouped score table (single-hop groups with averages, a
// multi-hop section, overall average, one-shot markers).
std::string render_score_table(const ScoreReport& report);

// Error-type count table, one row per task kind.
std::string render_error_table(const ScoreReport& report);

// Machine-readable summary of the whole report.
std::string report_to_json(const ScoreReport& report,
                           const std::vector<InstanceResult>& results);

}  // namespace geneqa::eval
