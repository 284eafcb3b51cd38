#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>

namespace geneqa::ncbi {

// Global admission gate keeping the wire request rate under a cap.
//
// For rates >= 1/s at most floor(rate) requests are admitted in any sliding
// one-second window; for fractional rates a minimum gap of 1/rate seconds is
// enforced between consecutive requests. A small cushion is added to every
// wait so that timestamps taken slightly after admission still satisfy the
// window property.
//
// Thread-safe; all sessions of a process share one limiter instance.
class RateLimiter {
public:
    using ClockFn = std::function<std::chrono::steady_clock::time_point()>;
    using SleepFn = std::function<void(std::chrono::steady_clock::duration)>;

    explicit RateLimiter(double max_per_second);
    RateLimiter(double max_per_second, ClockFn now, SleepFn sleep);

    // Blocks until one request may go out, then records its admission.
    void acquire();

    double max_per_second() const { return rate_; }

private:
    double rate_;
    ClockFn now_;
    SleepFn sleep_;
    std::mutex mutex_;
    std::deque<std::chrono::steady_clock::time_point> admitted_;
};

}  // namespace geneqa::ncbi
