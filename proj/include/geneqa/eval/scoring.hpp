#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geneqa/eval/tasks.hpp"

namespace geneqa::eval {

enum class ScoreDetail { exact, partial_chromosome, recall_fraction, miss };
std::string to_string(ScoreDetail d);

// Exact rational score in [0,1]; recall keeps matched/gold-size unreduced so
// tests can assert exact values like 1/3.
struct Score {
    int num = 0;
    int den = 1;
    ScoreDetail detail = ScoreDetail::miss;
    std::string note;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_full() const { return num == den; }

    static Score exact_hit() { return {1, 1, ScoreDetail::exact, {}}; }
    static Score half(ScoreDetail d, std::string note = {}) { return {1, 2, d, std::move(note)}; }
    static Score miss(std::string note = {}) { return {0, 1, ScoreDetail::miss, std::move(note)}; }
    static Score recall(int matched, int gold_size) {
        return {matched, gold_size, ScoreDetail::recall_fraction, {}};
    }
};

// Kind-specific prediction normalization. Total and idempotent: trims,
// case-folds alias answers, maps yes/no to TRUE/NA, converts Latin species
// names to informal names, and canonicalizes chr-prefixed locations.
std::string normalize(TaskKind kind, const std::string& raw);

// Splits a predicted list on commas/semicolons/" and " and normalizes each
// member (used for set-valued kinds).
std::vector<std::string> normalize_set(TaskKind kind, const std::string& raw);

// Dispatches on kind: exact / recall / genome-alignment / hop scoring.
// `manual_override` (from the task record) wins for hop_snp_gene_function.
Score score_task(const TaskInstance& instance, const std::string& prediction);

// 1 when normalized prediction equals normalized gold, else 0.
Score score_exact(TaskKind kind, const std::string& pred, const std::string& gold);

// |pred ∩ gold| / |gold| over already-normalized sets; gold must be non-empty.
Score score_recall(const std::vector<std::string>& pred_set,
                   const std::vector<std::string>& gold_set);

// chr{name}:{start}-{end} matching: full match scores 1, same chromosome
// with different or missing positions scores 0.5, otherwise 0.
Score score_genome_alignment(const std::string& pred_range, const std::string& gold_range);

// Multi-hop scoring. Location recall is exact-string per band (a lenient
// prefix mode exists behind a flag and is off by default); alias recall is
// case-insensitive; gene function gets 1 for an exact match, 0.5 for a
// substring-level partial match.
struct HopOptions {
    bool lenient_location_prefix = false;
};
Score score_hop(TaskKind kind, const std::string& pred, const std::vector<std::string>& gold,
                const HopOptions& options = {});

// Parsed chromosome range ("chr8:7081648-7081782" or bare "chr8").
struct ChromosomeRange {
    std::string chromosome;
    std::optional<long long> start;
    std::optional<long long> end;
};
std::optional<ChromosomeRange> parse_chromosome_range(const std::string& text);

}  // namespace geneqa::eval
