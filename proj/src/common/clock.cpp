#include "common/clock.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace litrepo {

TimePoint SystemClock::now() {
  return std::chrono::time_point_cast<Duration>(std::chrono::system_clock::now());
}

void SystemClock::sleep_until(TimePoint deadline) {
  auto remaining = deadline - now();
  if (remaining > Duration::zero()) {
    std::this_thread::sleep_for(remaining);
  }
}

TimePoint FakeClock::now() {
  std::lock_guard lock(mutex_);
  return now_;
}

void FakeClock::sleep_until(TimePoint deadline) {
  std::lock_guard lock(mutex_);
  now_ = std::max(now_, deadline);
}

void FakeClock::advance(Duration d) {
  std::lock_guard lock(mutex_);
  now_ += d;
}

Throttle::Throttle(Clock &clock, Duration min_interval)
    : clock_(clock), min_interval_(min_interval) {
  if (min_interval < Duration::zero()) {
    throw std::invalid_argument("throttle: min_interval must be >= 0");
  }
}

TimePoint Throttle::acquire() {
  std::lock_guard lock(mutex_);
  TimePoint earliest = hold_;
  if (has_last_) {
    earliest = std::max(earliest, last_ + min_interval_);
  }
  clock_.sleep_until(earliest);
  // A real clock can wake marginally early; never grant before the bound.
  TimePoint granted = clock_.now();
  while (granted < earliest) {
    clock_.sleep_until(earliest);
    granted = clock_.now();
  }
  last_ = granted;
  has_last_ = true;
  return granted;
}

void Throttle::hold_until(TimePoint until) {
  std::lock_guard lock(mutex_);
  hold_ = std::max(hold_, until);
}

} // namespace litrepo
