#include "geneqa/eval/report.hpp"

#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::eval {

using nlohmann::json;

ScoreReport aggregate_from_means(const std::map<TaskKind, double>& per_task_means,
                                 const std::map<TaskKind, bool>& one_shot_flags) {
    if (per_task_means.empty()) throw ConstructionError("cannot aggregate an empty score set");

    ScoreReport report;
    report.per_task = per_task_means;
    report.one_shot_flags = one_shot_flags;

    std::map<TaskGroup, std::pair<double, int>> group_sums;
    double total = 0.0;
    for (const auto& [kind, mean] : per_task_means) {
        total += mean;
        TaskGroup group = group_of(kind);
        if (group != TaskGroup::multi_hop) {
            group_sums[group].first += mean;
            group_sums[group].second += 1;
        }
    }
    for (const auto& [group, sum_count] : group_sums)
        report.per_group[group] = sum_count.first / sum_count.second;
    report.macro_average = total / static_cast<double>(per_task_means.size());
    return report;
}

ScoreReport aggregate(const std::vector<InstanceResult>& results,
                      const std::map<TaskKind, bool>& one_shot_flags) {
    if (results.empty()) throw ConstructionError("cannot aggregate an empty score set");

    std::map<TaskKind, std::pair<double, int>> sums;
    std::map<TaskKind, std::map<ErrorType, int>> error_counts;
    std::map<TaskKind, int> instance_counts;
    for (const auto& r : results) {
        sums[r.kind].first += r.score.value();
        sums[r.kind].second += 1;
        instance_counts[r.kind] += 1;
        if (r.error.type != ErrorType::none) ++error_counts[r.kind][r.error.type];
    }

    std::map<TaskKind, double> means;
    for (const auto& [kind, sum_count] : sums)
        means[kind] = sum_count.first / sum_count.second;

    ScoreReport report = aggregate_from_means(means, one_shot_flags);
    report.error_counts = std::move(error_counts);
    report.instance_counts = std::move(instance_counts);
    return report;
}

namespace {

std::string task_label(TaskKind kind) {
    switch (kind) {
        case TaskKind::gene_alias: return "Gene alias";
        case TaskKind::gene_name_conversion: return "Gene name conversion";
        case TaskKind::gene_snp_association: return "Gene SNP association";
        case TaskKind::gene_location: return "Gene location";
        case TaskKind::snp_location: return "SNP location";
        case TaskKind::gene_disease_association: return "Gene disease association";
        case TaskKind::protein_coding: return "Protein-coding genes";
        case TaskKind::dna_to_human_genome: return "DNA to human genome";
        case TaskKind::dna_to_species: return "DNA to multiple species";
        case TaskKind::hop_snp_gene_function: return "SNP gene function";
        case TaskKind::hop_disease_gene_location: return "Disease gene location";
        case TaskKind::hop_sequence_gene_alias: return "Sequence gene alias";
    }
    return to_string(kind);
}

std::string group_label(TaskGroup group) {
    switch (group) {
        case TaskGroup::nomenclature: return "Nomenclature";
        case TaskGroup::genomic_location: return "Genomic location";
        case TaskGroup::functional_analysis: return "Functional analysis";
        case TaskGroup::sequence_alignment: return "Sequence alignment";
        case TaskGroup::multi_hop: return "Multi-hop";
    }
    return "Multi-hop";
}

void append_row(std::ostringstream& out, const std::string& label, double value,
                bool one_shot = false) {
    out << "  " << std::left << std::setw(28) << label << util::format_fixed(value, 2);
    if (one_shot) out << " *";
    out << "\n";
}

}  // namespace

std::string render_score_table(const ScoreReport& report) {
    std::ostringstream out;
    constexpr TaskGroup kGroups[] = {TaskGroup::nomenclature, TaskGroup::genomic_location,
                                     TaskGroup::functional_analysis, TaskGroup::sequence_alignment};

    for (TaskGroup group : kGroups) {
        bool any = false;
        for (const auto& [kind, mean] : report.per_task) {
            if (group_of(kind) != group) continue;
            if (!any) out << group_label(group) << "\n";
            any = true;
            auto flag = report.one_shot_flags.find(kind);
            append_row(out, task_label(kind), mean, flag != report.one_shot_flags.end() && flag->second);
        }
        if (any) {
            append_row(out, "Average", report.per_group.at(group));
            out << "\n";
        }
    }

    bool any_hop = false;
    double hop_sum = 0.0;
    int hop_count = 0;
    for (const auto& [kind, mean] : report.per_task) {
        if (group_of(kind) != TaskGroup::multi_hop) continue;
        if (!any_hop) out << group_label(TaskGroup::multi_hop) << "\n";
        any_hop = true;
        auto flag = report.one_shot_flags.find(kind);
        append_row(out, task_label(kind), mean, flag != report.one_shot_flags.end() && flag->second);
        hop_sum += mean;
        ++hop_count;
    }
    if (any_hop) {
        append_row(out, "Average", hop_sum / hop_count);
        out << "\n";
    }

    append_row(out, "Overall average", report.macro_average);
    out << "\n(* = one-shot: the prompt held a demonstration from the same task family)\n";
    return out.str();
}

std::string render_error_table(const ScoreReport& report) {
    constexpr ErrorType kTypes[] = {ErrorType::E1_wrong_api, ErrorType::E2_wrong_arguments,
                                    ErrorType::E3_wrong_comprehension, ErrorType::E4_unanswerable,
                                    ErrorType::O_other};
    std::ostringstream out;
    out << "  " << std::left << std::setw(28) << "Task";
    for (ErrorType t : kTypes) out << std::setw(5) << to_string(t);
    out << "\n";
    for (const auto& [kind, mean] : report.per_task) {
        (void)mean;
        out << "  " << std::left << std::setw(28) << task_label(kind);
        auto counts = report.error_counts.find(kind);
        for (ErrorType t : kTypes) {
            int n = 0;
            if (counts != report.error_counts.end()) {
                auto it = counts->second.find(t);
                if (it != counts->second.end()) n = it->second;
            }
            out << std::setw(5) << n;
        }
        out << "\n";
    }
    out << "\nE1 wrong API; E2 wrong arguments; E3 wrong comprehension; "
           "E4 unanswerable with API; O other\n";
    return out.str();
}

std::string report_to_json(const ScoreReport& report,
                           const std::vector<InstanceResult>& results) {
    json per_task = json::object();
    for (const auto& [kind, mean] : report.per_task) per_task[to_string(kind)] = mean;
    json per_group = json::object();
    for (const auto& [group, mean] : report.per_group) per_group[to_string(group)] = mean;
    json errors = json::object();
    for (const auto& [kind, counts] : report.error_counts) {
        json row = json::object();
        for (const auto& [type, count] : counts) row[to_string(type)] = count;
        errors[to_string(kind)] = std::move(row);
    }
    json one_shot = json::object();
    for (const auto& [kind, flag] : report.one_shot_flags) one_shot[to_string(kind)] = flag;
    json instance_counts = json::object();
    for (const auto& [kind, n] : report.instance_counts) instance_counts[to_string(kind)] = n;

    json items = json::array();
    for (const auto& r : results) {
        json item = {{"kind", to_string(r.kind)},
                     {"question", r.question},
                     {"prediction", r.prediction},
                     {"score", r.score.value()},
                     {"score_detail", to_string(r.score.detail)},
                     {"error", to_string(r.error.type)},
                     {"error_rule", r.error.rule},
                     {"one_shot", r.one_shot}};
        if (!r.transcript_file.empty()) item["transcript"] = r.transcript_file;
        items.push_back(std::move(item));
    }

    json doc = {{"per_task", std::move(per_task)},
                {"per_group", std::move(per_group)},
                {"macro_average", report.macro_average},
                {"error_counts", std::move(errors)},
                {"one_shot_flags", std::move(one_shot)},
                {"instance_counts", std::move(instance_counts)},
                {"provenance",
                 {{"preset", report.provenance.preset_id},
                  {"backend", report.provenance.backend_id},
                  {"transport", report.provenance.transport_mode},
                  {"fixture_hashes", report.provenance.fixture_hashes}}},
                {"instances", std::move(items)}};
    return doc.dump(2) + "\n";
}

}  // namespace geneqa::eval
