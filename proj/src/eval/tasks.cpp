#include "geneqa/eval/tasks.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "geneqa/errors.hpp"
#include "geneqa/eval/scoring.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::eval {

using nlohmann::json;

std::string to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::gene_alias: return "gene_alias";
        case TaskKind::gene_name_conversion: return "gene_name_conversion";
        case TaskKind::gene_snp_association: return "gene_snp_association";
        case TaskKind::gene_location: return "gene_location";
        case TaskKind::snp_location: return "snp_location";
        case TaskKind::gene_disease_association: return "gene_disease_association";
        case TaskKind::protein_coding: return "protein_coding";
        case TaskKind::dna_to_human_genome: return "dna_to_human_genome";
        case TaskKind::dna_to_species: return "dna_to_species";
        case TaskKind::hop_snp_gene_function: return "hop_snp_gene_function";
        case TaskKind::hop_disease_gene_location: return "hop_disease_gene_location";
        case TaskKind::hop_sequence_gene_alias: return "hop_sequence_gene_alias";
    }
    return "gene_alias";
}

TaskKind task_kind_from_string(const std::string& s) {
    for (TaskKind kind : kAllTaskKinds)
        if (to_string(kind) == s) return kind;
    throw LoadError("unknown task kind: " + s);
}

bool is_hop_task(TaskKind kind) {
    return kind == TaskKind::hop_snp_gene_function ||
           kind == TaskKind::hop_disease_gene_location ||
           kind == TaskKind::hop_sequence_gene_alias;
}

bool is_set_valued(TaskKind kind) {
    return kind == TaskKind::gene_disease_association ||
           kind == TaskKind::hop_disease_gene_location ||
           kind == TaskKind::hop_sequence_gene_alias;
}

bool is_disease_task(TaskKind kind) {
    return kind == TaskKind::gene_disease_association ||
           kind == TaskKind::hop_disease_gene_location;
}

TaskGroup group_of(TaskKind kind) {
    switch (kind) {
        case TaskKind::gene_alias:
        case TaskKind::gene_name_conversion:
            return TaskGroup::nomenclature;
        case TaskKind::gene_snp_association:
        case TaskKind::gene_location:
        case TaskKind::snp_location:
            return TaskGroup::genomic_location;
        case TaskKind::gene_disease_association:
        case TaskKind::protein_coding:
            return TaskGroup::functional_analysis;
        case TaskKind::dna_to_human_genome:
        case TaskKind::dna_to_species:
            return TaskGroup::sequence_alignment;
        default:
            return TaskGroup::multi_hop;
    }
}

std::string to_string(TaskGroup group) {
    switch (group) {
        case TaskGroup::nomenclature: return "nomenclature";
        case TaskGroup::genomic_location: return "genomic_location";
        case TaskGroup::functional_analysis: return "functional_analysis";
        case TaskGroup::sequence_alignment: return "sequence_alignment";
        case TaskGroup::multi_hop: return "multi_hop";
    }
    return "multi_hop";
}

std::map<TaskKind, int> TaskSet::counts() const {
    std::map<TaskKind, int> out;
    for (const auto& instance : instances) ++out[instance.kind];
    return out;
}

TaskSet load_taskset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open task file: " + path);

    TaskSet out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (util::trim(line).empty()) continue;
        auto fail = [&](const std::string& why) {
            throw LoadError(path + ":" + std::to_string(line_no) + ": " + why);
        };

        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            fail(std::string("invalid JSON: ") + e.what());
        }

        TaskInstance instance;
        try {
            instance.kind = task_kind_from_string(record.at("kind").get<std::string>());
        } catch (const json::exception&) {
            fail("missing or invalid 'kind'");
        } catch (const LoadError& e) {
            fail(e.what());
        }
        if (!record.contains("question") || !record["question"].is_string())
            fail("missing 'question'");
        instance.question = record["question"].get<std::string>();
        if (instance.question.empty()) fail("empty question");

        if (!record.contains("gold")) fail("missing 'gold'");
        const json& gold = record["gold"];
        if (gold.is_string()) {
            if (is_set_valued(instance.kind)) {
                // Allow comma-separated shorthand for set golds.
                instance.gold = util::split_any(gold.get<std::string>(), ",;");
                for (auto& g : instance.gold) g = util::trim(g);
            } else {
                instance.gold = {gold.get<std::string>()};
            }
        } else if (gold.is_array()) {
            for (const auto& g : gold) {
                if (!g.is_string()) fail("gold array entries must be strings");
                instance.gold.push_back(g.get<std::string>());
            }
        } else {
            fail("gold must be a string or array of strings");
        }
        if (instance.gold.empty()) fail("gold must be non-empty");
        for (const auto& g : instance.gold)
            if (util::trim(g).empty()) fail("gold contains an empty entry");
        if (!is_set_valued(instance.kind) && instance.gold.size() != 1)
            fail("task kind " + to_string(instance.kind) + " takes a single gold value");

        if (record.contains("manual_score")) {
            if (!record["manual_score"].is_number()) fail("manual_score must be a number");
            double v = record["manual_score"].get<double>();
            if (v != 0.0 && v != 0.5 && v != 1.0) fail("manual_score must be 0, 0.5 or 1");
            instance.manual_score = v;
        }

        if (instance.kind == TaskKind::dna_to_human_genome &&
            !parse_chromosome_range(instance.gold_scalar()))
            fail("gold must parse as chr{name}[:{start}-{end}]");

        out.instances.push_back(std::move(instance));
    }
    return out;
}

}  // namespace geneqa::eval
