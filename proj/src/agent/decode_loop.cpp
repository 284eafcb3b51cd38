#include "geneqa/agent/decode_loop.hpp"

#include <json.hpp>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::agent {

using nlohmann::json;

void SessionBudget::validate() const {
    if (max_api_calls < 0) throw ConstructionError("max_api_calls must be >= 0");
    if (max_generated_chars <= 0) throw ConstructionError("max_generated_chars must be positive");
    if (max_wall_time.count() <= 0) throw ConstructionError("max_wall_time must be positive");
    if (splice_token_budget <= 0) throw ConstructionError("splice_token_budget must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::answered: return "answered";
        case Termination::budget_exhausted: return "budget_exhausted";
        case Termination::backend_error: return "backend_error";
        case Termination::api_error: return "api_error";
    }
    return "budget_exhausted";
}

namespace {

Termination termination_from_string(const std::string& s) {
    if (s == "answered") return Termination::answered;
    if (s == "budget_exhausted") return Termination::budget_exhausted;
    if (s == "backend_error") return Termination::backend_error;
    if (s == "api_error") return Termination::api_error;
    throw LoadError("unknown termination: " + s);
}

// The line immediately before a trailing "\n\n", empty when there is none.
std::string line_before_terminator(const std::string& text) {
    if (text.size() < 2) return {};
    std::size_t first_nl = text.size() - 2;  // index of the terminator's first '\n'
    if (first_nl == 0) return {};
    auto prev_nl = text.rfind('\n', first_nl - 1);
    std::size_t line_start = prev_nl == std::string::npos ? 0 : prev_nl + 1;
    return text.substr(line_start, first_nl - line_start);
}

bool is_answer_line(const std::string& line) {
    return util::starts_with(line, "Answer:");
}

std::string answer_value(const std::string& line) {
    std::string value = line.substr(std::string("Answer:").size());
    return util::trim(value);
}

}  // namespace

Trigger detect_trigger(const std::string& text_tail) {
    if (util::ends_with(text_tail, "]->")) return Trigger::api_call;
    if (util::ends_with(text_tail, "\n\n") && is_answer_line(line_before_terminator(text_tail)))
        return Trigger::answer_end;
    return Trigger::none;
}

std::string extract_last_url(const std::string& working_text) {
    if (!util::ends_with(working_text, "->"))
        throw MalformedCallError("working text does not end with ->");
    if (working_text.size() < 3 || working_text[working_text.size() - 3] != ']')
        throw MalformedCallError("-> is not preceded by a closing bracket");

    std::size_t close = working_text.size() - 3;
    auto open = working_text.rfind('[', close);
    if (open == std::string::npos)
        throw MalformedCallError("no bracketed URL before ->");

    std::string content = util::trim(working_text.substr(open + 1, close - open - 1));
    if (!util::starts_with(content, "http"))
        throw MalformedCallError("bracketed call content is not a URL: " + content);
    return content;
}

std::string splice_result(const std::string& working_text, const std::string& result_text) {
    if (!util::ends_with(working_text, "->"))
        throw MalformedCallError("cannot splice: working text does not end with ->");
    return working_text + "[" + result_text + "]";
}

ExtractedAnswers extract_answers(const std::string& full_text, std::size_t generation_start,
                                 const std::vector<ApiCallRecord>& api_calls) {
    auto inside_splice = [&](std::size_t pos) {
        for (const auto& call : api_calls)
            if (pos >= call.splice_begin && pos < call.splice_end) return true;
        return false;
    };

    ExtractedAnswers out;
    std::size_t pos = generation_start;
    while (pos < full_text.size()) {
        auto line_end = full_text.find('\n', pos);
        if (line_end == std::string::npos) line_end = full_text.size();
        if (!inside_splice(pos)) {
            std::string line = full_text.substr(pos, line_end - pos);
            if (is_answer_line(line)) out.sub_answers.push_back(answer_value(line));
        }
        pos = line_end + 1;
    }
    if (!out.sub_answers.empty()) {
        out.final_answer = out.sub_answers.back();
        out.sub_answers.pop_back();
    }
    return out;
}

AgentTranscript run_session(const std::string& question, const prompt::PromptConfig& config,
                            const prompt::PromptLibrary& library, CompletionBackend& backend,
                            ncbi::NcbiClient& client, const SessionBudget& budget,
                            std::shared_ptr<util::Clock> clock) {
    budget.validate();
    if (question.empty()) throw ConfigError("question must be non-empty");

    AgentTranscript t;
    t.question = question;
    t.prompt_config_id = config.id;
    t.full_text = library.assemble(config, question);
    t.prompt_length = t.full_text.size();

    const auto started = std::chrono::steady_clock::now();
    auto wall_time_exceeded = [&] {
        return std::chrono::steady_clock::now() - started > budget.max_wall_time;
    };

    auto finish = [&](Termination reason, std::string note = {}) {
        t.termination = reason;
        t.error_note = std::move(note);
        if (reason == Termination::answered) {
            auto answers = extract_answers(t.full_text, t.prompt_length, t.api_calls);
            if (!answers.final_answer)
                throw Error("session answered but no Answer line found");
            t.sub_answers = answers.sub_answers;
            t.final_answer = answers.final_answer;
        }
        return t;
    };

    for (;;) {
        if (wall_time_exceeded()) return finish(Termination::budget_exhausted);
        if (t.generated_chars >= budget.max_generated_chars)
            return finish(Termination::budget_exhausted);

        std::string chunk;
        try {
            chunk = backend.next_chunk(t.full_text);
        } catch (const std::exception& e) {
            return finish(Termination::backend_error, e.what());
        }
        if (chunk.empty())
            return finish(Termination::backend_error, "backend returned an empty chunk");

        // Scan the chunk character by character so triggers are found no
        // matter how the backend slices its output. On an API call the rest
        // of the chunk is dropped: generation resumes from the spliced text.
        for (char c : chunk) {
            t.full_text.push_back(c);
            ++t.generated_chars;

            Trigger trigger = detect_trigger(t.full_text);
            if (trigger == Trigger::none) {
                if (t.generated_chars >= budget.max_generated_chars)
                    return finish(Termination::budget_exhausted);
                continue;
            }

            if (trigger == Trigger::answer_end) return finish(Termination::answered);

            if (static_cast<int>(t.api_calls.size()) >= budget.max_api_calls)
                return finish(Termination::budget_exhausted);

            ApiCallRecord record;
            record.transport = client.transport_kind();
            record.started_at_ms = clock->now_ms();
            std::string result;
            try {
                record.url = extract_last_url(t.full_text);
                result = client.call(record.url);
            } catch (const std::exception& e) {
                t.api_calls.push_back(record);
                return finish(Termination::api_error, e.what());
            }
            record.finished_at_ms = clock->now_ms();

            auto truncated = ncbi::truncate_for_context(result, budget.splice_token_budget);
            record.response_excerpt = truncated.text;
            record.truncated = truncated.truncated;
            record.splice_begin = t.full_text.size() + 1;  // after the opening '['
            t.full_text = splice_result(t.full_text, truncated.text);
            record.splice_end = t.full_text.size() - 1;  // before the closing ']'
            t.api_calls.push_back(std::move(record));
            break;  // drop the rest of the chunk, ask the backend to continue
        }
    }
}

std::string transcript_to_json(const AgentTranscript& t) {
    json calls = json::array();
    for (const auto& c : t.api_calls) {
        calls.push_back({{"url", c.url},
                         {"response_excerpt", c.response_excerpt},
                         {"truncated", c.truncated},
                         {"started_at_ms", c.started_at_ms},
                         {"finished_at_ms", c.finished_at_ms},
                         {"transport", c.transport},
                         {"splice_begin", c.splice_begin},
                         {"splice_end", c.splice_end}});
    }
    json doc = {{"question", t.question},
                {"prompt_config_id", t.prompt_config_id},
                {"full_text", t.full_text},
                {"prompt_length", t.prompt_length},
                {"api_calls", std::move(calls)},
                {"sub_answers", t.sub_answers},
                {"termination", to_string(t.termination)},
                {"generated_chars", t.generated_chars}};
    if (t.final_answer) doc["final_answer"] = *t.final_answer;
    if (!t.error_note.empty()) doc["error_note"] = t.error_note;
    return doc.dump(2) + "\n";
}

AgentTranscript transcript_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(std::string("transcript: ") + e.what());
    }
    AgentTranscript t;
    t.question = doc.at("question").get<std::string>();
    t.prompt_config_id = doc.value("prompt_config_id", "");
    t.full_text = doc.at("full_text").get<std::string>();
    t.prompt_length = doc.value("prompt_length", std::size_t{0});
    t.generated_chars = doc.value("generated_chars", 0);
    t.termination = termination_from_string(doc.at("termination").get<std::string>());
    t.sub_answers = doc.value("sub_answers", std::vector<std::string>{});
    if (doc.contains("final_answer")) t.final_answer = doc["final_answer"].get<std::string>();
    if (doc.contains("error_note")) t.error_note = doc["error_note"].get<std::string>();
    for (const auto& item : doc.value("api_calls", json::array())) {
        ApiCallRecord c;
        c.url = item.at("url").get<std::string>();
        c.response_excerpt = item.value("response_excerpt", "");
        c.truncated = item.value("truncated", false);
        c.started_at_ms = item.value("started_at_ms", std::int64_t{0});
        c.finished_at_ms = item.value("finished_at_ms", std::int64_t{0});
        c.transport = item.value("transport", "");
        c.splice_begin = item.value("splice_begin", std::size_t{0});
        c.splice_end = item.value("splice_end", std::size_t{0});
        t.api_calls.push_back(std::move(c));
    }
    return t;
}

}  // namespace geneqa::agent
