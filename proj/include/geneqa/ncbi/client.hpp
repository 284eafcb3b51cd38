#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include "geneqa/ncbi/rate_limiter.hpp"
#include "geneqa/ncbi/requests.hpp"
#include "geneqa/ncbi/transport.hpp"
#include "geneqa/util/clock.hpp"

namespace geneqa::ncbi {

// Throttling, retry and BLAST polling knobs. Defaults follow NCBI usage
// guidance: 3 requests/second without an API key.
struct RateLimitPolicy {
    double max_requests_per_second = 3.0;
    int max_retries = 3;
    std::chrono::milliseconds backoff_base{250};
    std::chrono::milliseconds blast_poll_interval{10'000};
    std::chrono::milliseconds blast_poll_timeout{300'000};

    void validate() const;
};

// Executes NCBI requests over an injected transport with global throttling.
// Safe for concurrent use; BLAST polling blocks only its own caller.
class NcbiClient {
public:
    using SleepFn = std::function<void(std::chrono::milliseconds)>;

    NcbiClient(std::shared_ptr<Transport> transport, RateLimitPolicy policy = {},
               std::shared_ptr<util::Clock> clock = util::system_clock());

    // Plain throttled GET with retries and exponential backoff on transient
    // failures. Status >= 400 raises StatusError carrying the body.
    RawResponse execute(const std::string& url);

    // Two-phase BLAST: Put, extract the RID, then Get until the body holds
    // final alignment content or the poll timeout elapses.
    RawResponse blast_submit_and_poll(const BlastPutRequest& put);

    // Polls an already-submitted RID.
    RawResponse blast_poll(const BlastGetRequest& get);

    // Dispatch used by the decode loop for a model-written URL:
    //   E-utils URL    -> response body
    //   BLAST CMD=Put  -> the extracted RID
    //   BLAST CMD=Get  -> polled final result body
    // Anything else is fetched as a plain GET.
    std::string call(const std::string& url);

    const RateLimitPolicy& policy() const { return policy_; }
    Transport& transport() { return *transport_; }
    std::string transport_kind() const { return transport_->kind(); }

    // Test hook: replaces waiting between retries/polls.
    void set_sleep_fn(SleepFn fn) { sleep_ = std::move(fn); }

    static bool blast_result_ready(const std::string& body);

private:
    RawResponse get_once(const std::string& url);
    RawResponse poll_get_url(const std::string& url);

    std::shared_ptr<Transport> transport_;
    RateLimitPolicy policy_;
    std::shared_ptr<util::Clock> clock_;
    RateLimiter limiter_;
    SleepFn sleep_;
};

}  // namespace geneqa::ncbi
