#pragma once

#include <stdexcept>
#include <string>

namespace geneqa {

// Base for all library errors; subclasses exist so callers can react by kind.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid request/config values detected while building something.
struct ConstructionError : Error {
    using Error::Error;
};

// Network-level failure after retries were exhausted.
struct TransportError : Error {
    using Error::Error;
};

// HTTP status >= 400; carries the response body for diagnosis.
struct StatusError : Error {
    StatusError(int status, const std::string& body, const std::string& url)
        : Error("HTTP status " + std::to_string(status) + " for " + url),
          status(status),
          body(body) {}
    int status;
    std::string body;
};

// Replay-mode cassette has no entry for the requested URL.
struct ReplayMissError : Error {
    using Error::Error;
};

// A token (e.g. BLAST RID) could not be found in a response body.
struct ExtractionError : Error {
    using Error::Error;
};

// BLAST polling did not reach a final result before the timeout.
struct PollTimeoutError : Error {
    using Error::Error;
};

// The working text requested an API call but no usable URL was found.
struct MalformedCallError : Error {
    using Error::Error;
};

// Scripted backend found a prompt that differs from what the script expects.
struct ScriptDesyncError : Error {
    using Error::Error;
};

// Scripted backend ran out of steps while the session was still going.
struct ScriptExhaustedError : Error {
    using Error::Error;
};

// Task files, cassettes or scripts that fail validation on load.
struct LoadError : Error {
    using Error::Error;
};

// Bad CLI/run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace geneqa
