#include "geneqa/ncbi/client.hpp"

#include <thread>

#include "geneqa/errors.hpp"
#include "geneqa/util/strings.hpp"

namespace geneqa::ncbi {

void RateLimitPolicy::validate() const {
    if (!(max_requests_per_second > 0))
        throw ConstructionError("max_requests_per_second must be positive");
    if (max_retries < 0) throw ConstructionError("max_retries must be >= 0");
    if (blast_poll_interval.count() <= 0)
        throw ConstructionError("blast_poll_interval must be positive");
    if (blast_poll_timeout < blast_poll_interval)
        throw ConstructionError("blast_poll_timeout must be >= blast_poll_interval");
}

NcbiClient::NcbiClient(std::shared_ptr<Transport> transport, RateLimitPolicy policy,
                       std::shared_ptr<util::Clock> clock)
    : transport_(std::move(transport)),
      policy_(policy),
      clock_(std::move(clock)),
      limiter_(policy.max_requests_per_second),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
    policy_.validate();
}

RawResponse NcbiClient::get_once(const std::string& url) {
    limiter_.acquire();
    RawResponse resp = transport_->get(url);
    resp.url = url;
    resp.fetched_at_ms = clock_->now_ms();
    return resp;
}

RawResponse NcbiClient::execute(const std::string& url) {
    std::string last_error;
    for (int attempt = 0; attempt <= policy_.max_retries; ++attempt) {
        if (attempt > 0) sleep_(policy_.backoff_base * (1 << (attempt - 1)));
        try {
            RawResponse resp = get_once(url);
            bool transient = resp.status == 429 || resp.status >= 500;
            if (transient && attempt < policy_.max_retries) {
                last_error = "HTTP " + std::to_string(resp.status);
                continue;
            }
            if (resp.status >= 400) throw StatusError(resp.status, resp.body, url);
            return resp;
        } catch (const TransportError& e) {
            last_error = e.what();
        }
    }
    throw TransportError("request failed after " + std::to_string(policy_.max_retries + 1) +
                         " attempts: " + url + " (" + last_error + ")");
}

bool NcbiClient::blast_result_ready(const std::string& body) {
    // Either the structured status line or the report header marks a final
    // result; pending submissions answer Status=WAITING.
    if (body.find("Sequences producing significant alignments") != std::string::npos) return true;
    if (body.find("Status=READY") != std::string::npos) return true;
    return false;
}

RawResponse NcbiClient::poll_get_url(const std::string& url) {
    std::chrono::milliseconds waited{0};
    for (;;) {
        RawResponse resp = execute(url);
        if (blast_result_ready(resp.body)) return resp;
        if (waited >= policy_.blast_poll_timeout)
            throw PollTimeoutError("BLAST result not ready after " +
                                   std::to_string(policy_.blast_poll_timeout.count()) +
                                   " ms: " + url);
        sleep_(policy_.blast_poll_interval);
        waited += policy_.blast_poll_interval;
    }
}

RawResponse NcbiClient::blast_poll(const BlastGetRequest& get) {
    get.validate();
    return poll_get_url(build_blast_get_url(get));
}

RawResponse NcbiClient::blast_submit_and_poll(const BlastPutRequest& put) {
    put.validate();
    RawResponse put_resp = execute(build_blast_put_url(put));
    std::string rid = extract_rid(put_resp.body);
    return blast_poll(BlastGetRequest{rid, put.format_type});
}

std::string NcbiClient::call(const std::string& url) {
    if (is_blast_put_url(url)) {
        RawResponse resp = execute(url);
        return extract_rid(resp.body);
    }
    if (is_blast_get_url(url)) {
        // Poll the URL exactly as written so replay lookups stay exact.
        return poll_get_url(url).body;
    }
    return execute(url).body;
}

}  // namespace geneqa::ncbi
