#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace geneqa::eval {

// The nine single-hop task kinds plus the three multi-hop kinds.
enum class TaskKind {
    gene_alias,
    gene_name_conversion,
    gene_snp_association,
    gene_location,
    snp_location,
    gene_disease_association,
    protein_coding,
    dna_to_human_genome,
    dna_to_species,
    hop_snp_gene_function,
    hop_disease_gene_location,
    hop_sequence_gene_alias,
};

inline constexpr TaskKind kAllTaskKinds[] = {
    TaskKind::gene_alias,          TaskKind::gene_name_conversion,
    TaskKind::gene_snp_association, TaskKind::gene_location,
    TaskKind::snp_location,        TaskKind::gene_disease_association,
    TaskKind::protein_coding,      TaskKind::dna_to_human_genome,
    TaskKind::dna_to_species,      TaskKind::hop_snp_gene_function,
    TaskKind::hop_disease_gene_location, TaskKind::hop_sequence_gene_alias,
};

std::string to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& s);

bool is_hop_task(TaskKind kind);
// gene_disease_association and the hop recall tasks carry set/list golds.
bool is_set_valued(TaskKind kind);
// Tasks whose questions are about a genetic disease (drives E1 detection).
bool is_disease_task(TaskKind kind);

// Report grouping. Multi-hop kinds sit outside the four groups.
enum class TaskGroup { nomenclature, genomic_location, functional_analysis, sequence_alignment, multi_hop };
TaskGroup group_of(TaskKind kind);
std::string to_string(TaskGroup group);

// One QA pair. `gold` holds either a single payload string or a set of
// strings, matching the task kind's shape.
struct TaskInstance {
    TaskKind kind = TaskKind::gene_alias;
    std::string question;
    std::vector<std::string> gold;  // single-element for scalar kinds
    std::optional<double> manual_score;  // optional human-judged override

    const std::string& gold_scalar() const { return gold.front(); }
};

struct TaskSet {
    std::vector<TaskInstance> instances;

    std::map<TaskKind, int> counts() const;
    std::size_t size() const { return instances.size(); }
};

// Loads a task file: one JSON record per line with fields
// {kind, question, gold, optional manual_score}. Errors name the line.
TaskSet load_taskset(const std::string& path);

}  // namespace geneqa::eval
