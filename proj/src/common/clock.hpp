#pragma once

#include <chrono>
#include <mutex>
#include <vector>

#include "common/types.hpp"

namespace litrepo {

using Duration = std::chrono::milliseconds;
using TimePoint = std::chrono::time_point<std::chrono::system_clock, Duration>;

/// Time source and sleeper. Every delay in the library goes through one of
/// these so tests can substitute FakeClock.
class Clock {
public:
  virtual ~Clock() = default;
  virtual TimePoint now() = 0;
  virtual void sleep_until(TimePoint deadline) = 0;

  void sleep_for(Duration d) { sleep_until(now() + d); }
  Timestamp now_seconds() { return std::chrono::floor<std::chrono::seconds>(now()); }
};

class SystemClock final : public Clock {
public:
  TimePoint now() override;
  void sleep_until(TimePoint deadline) override;
};

/// Virtual clock: sleeping advances time instantly.
class FakeClock final : public Clock {
public:
  explicit FakeClock(TimePoint start = TimePoint{}) : now_(start) {}

  TimePoint now() override;
  void sleep_until(TimePoint deadline) override;
  void advance(Duration d);

private:
  std::mutex mutex_;
  TimePoint now_;
};

/// Single gate imposing a minimum spacing on outbound requests.
///
/// acquire() blocks until both the spacing since the previous grant and any
/// server-imposed hold have elapsed. Grants form a total order.
class Throttle {
public:
  Throttle(Clock &clock, Duration min_interval);

  /// Blocks until a request may go out; returns the grant time.
  TimePoint acquire();

  /// No grant before `until` (server retry-after / quota reset).
  void hold_until(TimePoint until);

  Duration min_interval() const { return min_interval_; }
  Clock &clock() { return clock_; }

private:
  Clock &clock_;
  Duration min_interval_;
  std::mutex mutex_;
  bool has_last_ = false;
  TimePoint last_{};
  TimePoint hold_{};
};

} // namespace litrepo
