#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geneqa/agent/backend.hpp"
#include "geneqa/ncbi/client.hpp"
#include "geneqa/prompt/prompt_kit.hpp"
#include "geneqa/util/clock.hpp"

namespace geneqa::agent {

// Hard caps that guarantee termination no matter what the backend emits.
struct SessionBudget {
    int max_api_calls = 8;
    int max_generated_chars = 16'384;
    std::chrono::milliseconds max_wall_time{120'000};
    // Token budget for splicing one API result into the working text.
    int splice_token_budget = 2'048;

    void validate() const;
};

enum class Termination { answered, budget_exhausted, backend_error, api_error };
std::string to_string(Termination t);

enum class Trigger { api_call, answer_end, none };

struct ApiCallRecord {
    std::string url;
    std::string response_excerpt;  // post-truncation splice text
    bool truncated = false;
    std::int64_t started_at_ms = 0;
    std::int64_t finished_at_ms = 0;
    std::string transport;  // "live", "replay", ...
    // Offsets of the spliced "[...]" block inside full_text.
    std::size_t splice_begin = 0;
    std::size_t splice_end = 0;
};

// Complete record of one interleaved session.
struct AgentTranscript {
    std::string question;
    std::string prompt_config_id;
    std::string full_text;          // prompt + generation + splices, in order
    std::size_t prompt_length = 0;  // generation starts here
    std::vector<ApiCallRecord> api_calls;
    std::vector<std::string> sub_answers;
    std::optional<std::string> final_answer;
    Termination termination = Termination::budget_exhausted;
    std::string error_note;  // set for backend_error / api_error
    int generated_chars = 0;

    std::string generated_text() const { return full_text.substr(prompt_length); }
};

// Pure trigger test on the working text's tail: "]->" requests an API call;
// a blank line directly after an "Answer:" line ends the session. An API
// call wins when both could match. A blank line without an Answer line
// (e.g. between sub-questions) does not terminate.
Trigger detect_trigger(const std::string& text_tail);

// Returns the contents of the innermost [...] group whose closing bracket
// immediately precedes the trailing "->". The content must start with
// "http" after trimming; otherwise MalformedCallError.
std::string extract_last_url(const std::string& working_text);

// working_text must end with "->"; result is appended in brackets.
std::string splice_result(const std::string& working_text, const std::string& result_text);

// Collects every "Answer:" line generated after `generation_start`,
// skipping spliced API results. The last one is the final answer, earlier
// ones are sub-answers of a multi-hop chain.
struct ExtractedAnswers {
    std::vector<std::string> sub_answers;
    std::optional<std::string> final_answer;
};
ExtractedAnswers extract_answers(const std::string& full_text, std::size_t generation_start,
                                 const std::vector<ApiCallRecord>& api_calls = {});

// Runs one interleaved decode-and-execute session: the backend extends the
// working text; on "]->" the last bracketed URL is executed through the
// client and its (truncated) result spliced back in brackets; generation
// then continues until an answer terminator or a budget stop.
AgentTranscript run_session(const std::string& question, const prompt::PromptConfig& config,
                            const prompt::PromptLibrary& library, CompletionBackend& backend,
                            ncbi::NcbiClient& client, const SessionBudget& budget = {},
                            std::shared_ptr<util::Clock> clock = util::system_clock());

// Transcript (de)serialization, one JSON document per session.
std::string transcript_to_json(const AgentTranscript& t);
AgentTranscript transcript_from_json(const std::string& text);

}  // namespace geneqa::agent
