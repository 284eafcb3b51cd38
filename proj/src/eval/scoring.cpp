#include "geneqa/eval/scoring.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::eval {

using util::to_lower;
using util::trim;

std::string to_string(ScoreDetail d) {
    switch (d) {
        case ScoreDetail::exact: return "exact";
        case ScoreDetail::partial_chromosome: return "partial_chromosome";
        case ScoreDetail::recall_fraction: return "recall_fraction";
        case ScoreDetail::miss: return "miss";
    }
    return "miss";
}

namespace {

// Latin binomial -> informal name, per the published conversion examples.
constexpr std::array<std::pair<const char*, const char*>, 6> kSpeciesMap = {{
    {"saccharomyces cerevisiae", "yeast"},
    {"caenorhabditis elegans", "worm"},
    {"danio rerio", "zebrafish"},
    {"homo sapiens", "human"},
    {"mus musculus", "mouse"},
    {"rattus norvegicus", "rat"},
}};

bool is_case_folded_kind(TaskKind kind) {
    return kind == TaskKind::gene_alias || kind == TaskKind::hop_sequence_gene_alias;
}

bool looks_like_chromosome_body(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == 'X' || c == 'Y' ||
                  c == 'M' || c == 'x' || c == 'y' || c == 'm' || c == ':' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::string normalize_location(const std::string& s) {
    std::string compact;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.empty()) return compact;
    if (util::starts_with(to_lower(compact), "chr")) return "chr" + compact.substr(3);
    if (looks_like_chromosome_body(compact)) return "chr" + compact;
    return compact;
}

}  // namespace

std::string normalize(TaskKind kind, const std::string& raw) {
    std::string s = trim(raw);
    switch (kind) {
        case TaskKind::protein_coding: {
            std::string lower = to_lower(s);
            if (lower == "yes" || lower == "true") return "TRUE";
            if (lower == "no" || lower == "na") return "NA";
            return s;
        }
        case TaskKind::dna_to_species: {
            std::string lower = to_lower(s);
            for (const auto& [latin, informal] : kSpeciesMap)
                if (lower == latin) return informal;
            return lower;
        }
        case TaskKind::gene_location:
        case TaskKind::snp_location:
        case TaskKind::dna_to_human_genome:
            return normalize_location(s);
        default:
            break;
    }
    if (is_case_folded_kind(kind)) return to_lower(s);
    return s;
}

std::vector<std::string> normalize_set(TaskKind kind, const std::string& raw) {
    // " and " joins are turned into commas before splitting.
    std::string pre = raw;
    for (const char* join : {" and ", " AND "}) {
        std::string::size_type pos = 0;
        while ((pos = pre.find(join, pos)) != std::string::npos) pre.replace(pos, 5, ",");
    }
    std::vector<std::string> out;
    for (const auto& piece : util::split_any(pre, ",;")) {
        std::string normalized = normalize(kind, piece);
        if (normalized.empty()) continue;
        if (std::find(out.begin(), out.end(), normalized) == out.end())
            out.push_back(normalized);
    }
    return out;
}

Score score_exact(TaskKind kind, const std::string& pred, const std::string& gold) {
    return normalize(kind, pred) == normalize(kind, gold) ? Score::exact_hit() : Score::miss();
}

Score score_recall(const std::vector<std::string>& pred_set,
                   const std::vector<std::string>& gold_set) {
    if (gold_set.empty()) throw ConstructionError("recall needs a non-empty gold set");
    int matched = 0;
    for (const auto& gold : gold_set)
        if (std::find(pred_set.begin(), pred_set.end(), gold) != pred_set.end()) ++matched;
    Score score = Score::recall(matched, static_cast<int>(gold_set.size()));
    if (matched == static_cast<int>(gold_set.size())) score.detail = ScoreDetail::exact;
    return score;
}

std::optional<ChromosomeRange> parse_chromosome_range(const std::string& text) {
    std::string s = normalize_location(trim(text));
    if (!util::starts_with(s, "chr") || s.size() <= 3) return std::nullopt;

    ChromosomeRange out;
    auto colon = s.find(':');
    std::string name = colon == std::string::npos ? s.substr(3) : s.substr(3, colon - 3);
    if (name.empty()) return std::nullopt;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c))) return std::nullopt;
    out.chromosome = util::to_upper(name);
    if (colon == std::string::npos) return out;

    std::string span = s.substr(colon + 1);
    auto dash = span.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= span.size()) return std::nullopt;
    try {
        out.start = std::stoll(span.substr(0, dash));
        out.end = std::stoll(span.substr(dash + 1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return out;
}

Score score_genome_alignment(const std::string& pred_range, const std::string& gold_range) {
    auto gold = parse_chromosome_range(gold_range);
    if (!gold) throw ConstructionError("gold range does not parse: " + gold_range);
    auto pred = parse_chromosome_range(pred_range);
    if (!pred) return Score::miss("prediction does not parse as chr{name}[:{start}-{end}]");
    if (pred->chromosome != gold->chromosome) return Score::miss();
    bool positions_match = pred->start.has_value() && gold->start.has_value() &&
                           *pred->start == *gold->start && *pred->end == *gold->end;
    if (positions_match) return Score::exact_hit();
    return Score::half(ScoreDetail::partial_chromosome, "chromosome matched, positions did not");
}

Score score_hop(TaskKind kind, const std::string& pred, const std::vector<std::string>& gold,
                const HopOptions& options) {
    switch (kind) {
        case TaskKind::hop_disease_gene_location: {
            std::vector<std::string> gold_norm;
            for (const auto& g : gold) gold_norm.push_back(trim(g));
            std::vector<std::string> pred_set;
            for (const auto& p : normalize_set(kind, pred)) pred_set.push_back(trim(p));
            if (!options.lenient_location_prefix) return score_recall(pred_set, gold_norm);
            // Lenient mode: a predicted band that is a prefix of the gold
            // band (e.g. 17q21 for 17q21.2) counts as a hit.
            int matched = 0;
            for (const auto& g : gold_norm) {
                bool hit = std::any_of(pred_set.begin(), pred_set.end(), [&](const std::string& p) {
                    return p == g || (!p.empty() && util::starts_with(g, p));
                });
                if (hit) ++matched;
            }
            Score s = Score::recall(matched, static_cast<int>(gold_norm.size()));
            if (matched == static_cast<int>(gold_norm.size())) s.detail = ScoreDetail::exact;
            return s;
        }
        case TaskKind::hop_sequence_gene_alias: {
            std::vector<std::string> gold_norm;
            for (const auto& g : gold) gold_norm.push_back(normalize(kind, g));
            return score_recall(normalize_set(kind, pred), gold_norm);
        }
        case TaskKind::hop_snp_gene_function: {
            std::string p = trim(pred);
            std::string g = trim(gold.front());
            if (p == g) return Score::exact_hit();
            if (p.empty()) return Score::miss();
            std::string pl = to_lower(p), gl = to_lower(g);
            if (pl.find(gl) != std::string::npos || gl.find(pl) != std::string::npos)
                return Score::half(ScoreDetail::partial_chromosome, "substring-level partial match");
            return Score::miss();
        }
        default:
            throw ConstructionError("score_hop called for non-hop kind " + to_string(kind));
    }
}

Score score_task(const TaskInstance& instance, const std::string& prediction) {
    if (instance.kind == TaskKind::hop_snp_gene_function && instance.manual_score) {
        // Human judgment wins over the heuristic when the record carries it.
        // The loader restricts the value to {0, 0.5, 1}.
        Score s;
        s.num = static_cast<int>(*instance.manual_score * 2.0 + 0.5);
        s.den = 2;
        s.detail = s.num == 2 ? ScoreDetail::exact : (s.num == 1 ? ScoreDetail::partial_chromosome
                                                                 : ScoreDetail::miss);
        s.note = "manual_score override";
        return s;
    }

    switch (instance.kind) {
        case TaskKind::gene_disease_association: {
            std::vector<std::string> gold_norm;
            for (const auto& g : instance.gold) gold_norm.push_back(normalize(instance.kind, g));
            return score_recall(normalize_set(instance.kind, prediction), gold_norm);
        }
        case TaskKind::dna_to_human_genome:
            return score_genome_alignment(normalize(instance.kind, prediction),
                                          instance.gold_scalar());
        case TaskKind::hop_snp_gene_function:
        case TaskKind::hop_disease_gene_location:
        case TaskKind::hop_sequence_gene_alias:
            return score_hop(instance.kind, prediction, instance.gold);
        default:
            return score_exact(instance.kind, prediction, instance.gold_scalar());
    }
}

}  // namespace geneqa::eval
