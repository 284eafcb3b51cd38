#include "geneqa/eval/errors.hpp"

#include <cctype>

#include "geneqa/ncbi/requests.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::eval {

std::string to_string(ErrorType e) {
    switch (e) {
        case ErrorType::E1_wrong_api: return "E1";
        case ErrorType::E2_wrong_arguments: return "E2";
        case ErrorType::E3_wrong_comprehension: return "E3";
        case ErrorType::E4_unanswerable: return "E4";
        case ErrorType::O_other: return "O";
        case ErrorType::none: return "none";
    }
    return "none";
}

namespace {

std::optional<std::string> query_param(const std::string& url, const std::string& key) {
    auto q = url.find('?');
    if (q == std::string::npos) return std::nullopt;
    for (const auto& piece : util::split_any(url.substr(q + 1), "&")) {
        auto eq = piece.find('=');
        if (eq == std::string::npos) continue;
        if (piece.substr(0, eq) == key)
            return util::url_decode_query_value(piece.substr(eq + 1));
    }
    return std::nullopt;
}

bool id_value_malformed(const std::string& id) {
    if (id.empty()) return true;
    // Numeric-database ids are digits joined by commas; anything with
    // letters or spaces means a term (or an rs-accession) was passed to id.
    for (char c : id)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',') return true;
    return false;
}

// Gold strings that should be discoverable in result bodies for this task.
std::vector<std::string> gold_tokens(const TaskInstance& instance) {
    std::vector<std::string> tokens;
    for (const auto& g : instance.gold) {
        std::string t = util::trim(g);
        if (!t.empty()) tokens.push_back(t);
    }
    return tokens;
}

}  // namespace

ErrorClassification classify_error(const agent::AgentTranscript& transcript,
                                   const TaskInstance& instance, const Score& score) {
    if (score.is_full()) return {ErrorType::none, "full_score"};

    // E1: wrong API family. Disease questions belong to the omim database;
    // a gene-db lookup (or no API use at all) is a wrong-API failure.
    if (transcript.api_calls.empty()) return {ErrorType::E1_wrong_api, "e1_no_calls"};
    if (is_disease_task(instance.kind)) {
        for (const auto& call : transcript.api_calls) {
            if (!ncbi::is_eutils_url(call.url)) continue;
            auto first_db = query_param(call.url, "db");
            if (first_db && *first_db == "gene") return {ErrorType::E1_wrong_api, "e1_wrong_db"};
            break;  // only the first lookup determines the API choice
        }
    }

    // E2: right API, malformed arguments.
    if (transcript.termination == agent::Termination::api_error &&
        transcript.error_note.find("RID") != std::string::npos)
        return {ErrorType::E2_wrong_arguments, "e2_rid_extraction"};
    for (const auto& call : transcript.api_calls) {
        if (!ncbi::is_eutils_url(call.url)) continue;
        if (auto id = query_param(call.url, "id"); id && id_value_malformed(*id))
            return {ErrorType::E2_wrong_arguments, "e2_id_malformed"};
        bool is_search = call.url.find("/esearch.fcgi") != std::string::npos;
        bool has_term = query_param(call.url, "term").has_value();
        bool has_id = query_param(call.url, "id").has_value();
        if (is_search && !has_term) return {ErrorType::E2_wrong_arguments, "e2_missing_term"};
        if (!is_search && has_term) return {ErrorType::E2_wrong_arguments, "e2_term_on_fetch"};
        if (!is_search && !has_id) return {ErrorType::E2_wrong_arguments, "e2_missing_id"};
    }

    // Alignment answers with the right chromosome but wrong coordinates are
    // reference-genome mismatches, not retrieval failures.
    if (instance.kind == TaskKind::dna_to_human_genome &&
        score.detail == ScoreDetail::partial_chromosome)
        return {ErrorType::O_other, "o_partial_alignment"};

    const auto tokens = gold_tokens(instance);
    bool gold_in_results = false;
    for (const auto& call : transcript.api_calls) {
        for (const auto& token : tokens) {
            if (util::contains_ci(call.response_excerpt, token)) {
                gold_in_results = true;
                break;
            }
        }
        if (gold_in_results) break;
    }

    // E4: the calls were fine but nothing they returned contains the answer.
    if (!gold_in_results) return {ErrorType::E4_unanswerable, "e4_gold_absent"};

    // E3: the answer was in a result body but not extracted into the reply.
    std::string answer = transcript.final_answer.value_or("");
    bool gold_in_answer = false;
    for (const auto& token : tokens)
        if (util::contains_ci(answer, token)) gold_in_answer = true;
    if (!gold_in_answer) return {ErrorType::E3_wrong_comprehension, "e3_not_extracted"};

    return {ErrorType::O_other, "o_unclassified"};
}

}  // namespace geneqa::eval
