#pragma once

#include <string>

#include "geneqa/agent/decode_loop.hpp"
#include "geneqa/eval/scoring.hpp"
#include "geneqa/eval/tasks.hpp"

namespace geneqa::eval {

// Failure taxonomy for scored sessions. `none` is reserved for full scores.
enum class ErrorType { E1_wrong_api, E2_wrong_arguments, E3_wrong_comprehension, E4_unanswerable, O_other, none };

std::string to_string(ErrorType e);

struct ErrorClassification {
    ErrorType type = ErrorType::none;
    std::string rule;  // id of the matched rule, for auditing
};

// Heuristic rule cascade over the session transcript:
//   E1 - wrong API: a disease question queried db=gene, or no call was made
//   E2 - wrong arguments: malformed id values (rs-prefixed or term-like),
//        missing required arguments, or a failed RID extraction
//   E4 - well-formed calls whose results never contain any gold token
//   E3 - a gold token appears in some result body but not in the answer
//   O  - everything else (notably alignment range mismatches scoring 0.5)
ErrorClassification classify_error(const agent::AgentTranscript& transcript,
                                   const TaskInstance& instance, const Score& score);

}  // namespace geneqa::eval
