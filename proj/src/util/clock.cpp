#include "geneqa/util/clock.hpp"

#include <chrono>

namespace geneqa::util {

std::int64_t SystemClock::now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::shared_ptr<Clock> system_clock() {
    static auto instance = std::make_shared<SystemClock>();
    return instance;
}

}  // namespace geneqa::util
