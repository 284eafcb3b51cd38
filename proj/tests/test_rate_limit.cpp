#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

#include "geneqa/errors.hpp"
#include "geneqa/ncbi/client.hpp"
#include "geneqa/ncbi/rate_limiter.hpp"

using namespace geneqa;
using namespace geneqa::ncbi;
using steady = std::chrono::steady_clock;

namespace {

// Transport that records request times and plays a fixed status sequence.
class StubTransport : public Transport {
public:
    explicit StubTransport(std::vector<int> statuses = {}) : statuses_(std::move(statuses)) {}

    RawResponse get(const std::string& url) override {
        std::lock_guard lock(mutex_);
        times.push_back(steady::now());
        urls.push_back(url);
        int status = 200;
        if (!statuses_.empty()) {
            status = statuses_[std::min(next_, statuses_.size() - 1)];
            ++next_;
        }
        if (status < 0) throw TransportError("stub network failure");
        return RawResponse{url, status, "stub body", 0};
    }

    std::string kind() const override { return "stub"; }

    std::vector<steady::time_point> times;
    std::vector<std::string> urls;

private:
    std::vector<int> statuses_;
    std::size_t next_ = 0;
    std::mutex mutex_;
};

// Largest number of admissions falling in any sliding 1-second window.
std::size_t max_in_window(const std::vector<steady::time_point>& times) {
    std::size_t worst = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::size_t count = 0;
        for (std::size_t j = i; j < times.size(); ++j)
            if (times[j] - times[i] < std::chrono::seconds(1)) ++count;
        worst = std::max(worst, count);
    }
    return worst;
}

}  // namespace

TEST_CASE("limiter admits at most floor(rate) per simulated second") {
    auto now = std::make_shared<steady::time_point>(steady::time_point{});
    RateLimiter limiter(
        3.0, [now] { return *now; },
        [now](steady::duration d) { *now += d; });

    std::vector<steady::time_point> admissions;
    for (int i = 0; i < 20; ++i) {
        limiter.acquire();
        admissions.push_back(*now);
    }
    CHECK(max_in_window(admissions) <= 3);
    // 20 requests at 3/s need at least 6 seconds of simulated time.
    CHECK(admissions.back() - admissions.front() >= std::chrono::seconds(6));
}

TEST_CASE("fractional rates enforce a minimum gap") {
    auto now = std::make_shared<steady::time_point>(steady::time_point{});
    RateLimiter limiter(
        0.5, [now] { return *now; },
        [now](steady::duration d) { *now += d; });

    std::vector<steady::time_point> admissions;
    for (int i = 0; i < 4; ++i) {
        limiter.acquire();
        admissions.push_back(*now);
    }
    for (std::size_t i = 1; i < admissions.size(); ++i)
        CHECK(admissions[i] - admissions[i - 1] >= std::chrono::seconds(2));
}

TEST_CASE("limiter rejects non-positive rates") {
    CHECK_THROWS_AS(RateLimiter(0.0), ConstructionError);
    CHECK_THROWS_AS(RateLimiter(-1.0), ConstructionError);
}

TEST_CASE("concurrent callers share the gate") {
    auto transport = std::make_shared<StubTransport>();
    RateLimitPolicy policy;
    policy.max_requests_per_second = 50.0;
    NcbiClient client(transport, policy);

    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&] {
            for (int i = 0; i < 10; ++i) client.execute("https://example.test/x");
        });
    for (auto& t : threads) t.join();

    CHECK(transport->times.size() == 40);
    CHECK(max_in_window(transport->times) <= 50);
}

TEST_CASE("execute retries transient failures with backoff") {
    auto transport = std::make_shared<StubTransport>(std::vector<int>{-1, 500, 200});
    RateLimitPolicy policy;
    policy.max_requests_per_second = 1000.0;
    policy.max_retries = 3;
    policy.backoff_base = std::chrono::milliseconds(1);
    NcbiClient client(transport, policy);

    RawResponse resp = client.execute("https://example.test/retry");
    CHECK(resp.status == 200);
    CHECK(transport->times.size() == 3);
}

TEST_CASE("execute gives up after max_retries") {
    auto transport = std::make_shared<StubTransport>(std::vector<int>{-1});
    RateLimitPolicy policy;
    policy.max_requests_per_second = 1000.0;
    policy.max_retries = 2;
    policy.backoff_base = std::chrono::milliseconds(1);
    NcbiClient client(transport, policy);

    CHECK_THROWS_AS(client.execute("https://no-such-host.invalid/"), TransportError);
    CHECK(transport->times.size() == 3);  // initial try + 2 retries
}

TEST_CASE("non-transient HTTP errors carry the body") {
    auto transport = std::make_shared<StubTransport>(std::vector<int>{404});
    RateLimitPolicy policy;
    policy.max_requests_per_second = 1000.0;
    NcbiClient client(transport, policy);

    try {
        client.execute("https://example.test/missing");
        FAIL("expected StatusError");
    } catch (const StatusError& e) {
        CHECK(e.status == 404);
        CHECK(e.body == "stub body");
    }
}

TEST_CASE("policy invariants") {
    RateLimitPolicy policy;
    policy.blast_poll_interval = std::chrono::milliseconds(100);
    policy.blast_poll_timeout = std::chrono::milliseconds(50);
    CHECK_THROWS_AS(policy.validate(), ConstructionError);
}
