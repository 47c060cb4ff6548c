#pragma once

#include <stdexcept>
#include <string>

namespace litrepo {

/// A value violates a documented invariant. The message names the invariant.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Transport failure or non-success HTTP status. status is 0 when no
/// response was received.
class HttpError : public std::runtime_error {
public:
  HttpError(const std::string &what, int status, bool retryable)
      : std::runtime_error(what), status_(status), retryable_(retryable) {}

  int status() const noexcept { return status_; }
  bool retryable() const noexcept { return retryable_; }

private:
  int status_;
  bool retryable_;
};

/// Unparseable remote payload. entry_index is -1 when the failure is not
/// attributable to a single entry.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, int entry_index = -1)
      : std::runtime_error(what), entry_index_(entry_index) {}

  int entry_index() const noexcept { return entry_index_; }

private:
  int entry_index_;
};

/// Knowledge-base persistence failure.
class StoreError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace litrepo
