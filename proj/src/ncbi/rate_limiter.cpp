#include "geneqa/ncbi/rate_limiter.hpp"

#include <cmath>
#include <thread>

#include "geneqa/errors.hpp"

namespace geneqa::ncbi {

namespace {

using std::chrono::steady_clock;

constexpr auto kWindow = std::chrono::seconds(1);
// Keeps post-admission send timestamps inside the window bound.
constexpr auto kCushion = std::chrono::milliseconds(15);

}  // namespace

RateLimiter::RateLimiter(double max_per_second)
    : RateLimiter(max_per_second, [] { return steady_clock::now(); },
                  [](steady_clock::duration d) { std::this_thread::sleep_for(d); }) {}

RateLimiter::RateLimiter(double max_per_second, ClockFn now, SleepFn sleep)
    : rate_(max_per_second), now_(std::move(now)), sleep_(std::move(sleep)) {
    if (!(rate_ > 0)) throw ConstructionError("max_requests_per_second must be positive");
}

void RateLimiter::acquire() {
    if (rate_ >= 1.0) {
        const auto cap = static_cast<size_t>(std::floor(rate_));
        for (;;) {
            steady_clock::duration wait{};
            {
                std::lock_guard lock(mutex_);
                auto now = now_();
                while (!admitted_.empty() && now - admitted_.front() >= kWindow)
                    admitted_.pop_front();
                if (admitted_.size() < cap) {
                    admitted_.push_back(now);
                    return;
                }
                wait = admitted_.front() + kWindow + kCushion - now;
            }
            if (wait.count() > 0) sleep_(wait);
        }
    }

    // Fractional rate: one request per 1/rate seconds.
    const auto gap = std::chrono::duration_cast<steady_clock::duration>(
        std::chrono::duration<double>(1.0 / rate_));
    for (;;) {
        steady_clock::duration wait{};
        {
            std::lock_guard lock(mutex_);
            auto now = now_();
            if (admitted_.empty() || now - admitted_.back() >= gap) {
                admitted_.clear();
                admitted_.push_back(now);
                return;
            }
            wait = admitted_.back() + gap + kCushion - now;
        }
        if (wait.count() > 0) sleep_(wait);
    }
}

}  // namespace geneqa::ncbi
