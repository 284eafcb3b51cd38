#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

namespace geneqa::util {

// Wall-clock abstraction so replayed sessions can produce stable timestamps.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() = 0;
};

// Real system time (ms since Unix epoch).
class SystemClock : public Clock {
public:
    std::int64_t now_ms() override;
};

// Monotonic counter starting at zero; each reading advances by one tick.
// Used for deterministic transcripts under scripted/replay runs.
class LogicalClock : public Clock {
public:
    std::int64_t now_ms() override { return next_++; }

private:
    std::atomic<std::int64_t> next_{0};
};

std::shared_ptr<Clock> system_clock();

}  // namespace geneqa::util
