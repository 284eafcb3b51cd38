#pragma once

#include <cstdint>
#include <string>

namespace geneqa::ncbi {

// Verbatim wire payload; nothing is truncated at this layer.
struct RawResponse {
    std::string url;
    int status = 0;
    std::string body;
    std::int64_t fetched_at_ms = 0;
};

// One HTTP GET. Implementations: live HTTP, cassette replay, recording
// wrapper, test stubs. Must be callable from multiple threads.
class Transport {
public:
    virtual ~Transport() = default;

    // Performs the request; throws TransportError on network failure.
    // HTTP error statuses are returned, not thrown (the client decides).
    virtual RawResponse get(const std::string& url) = 0;

    // Short identifier recorded in transcripts ("live", "replay", ...).
    virtual std::string kind() const = 0;
};

}  // namespace geneqa::ncbi
