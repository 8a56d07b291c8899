#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fairsack {

// Base class for all domain errors raised by this library. Violated
// constructor invariants use std::invalid_argument instead; arithmetic
// that would wrap a 64-bit value uses std::overflow_error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Normalization requested for a die that is not semifair.
class NotSemifairError : public Error {
public:
    using Error::Error;
};

// A support set that cannot be a normalized die (e.g. missing the 0 term).
class InvalidSupportError : public Error {
public:
    using Error::Error;
};

// A product expected to be collision free produced a repeated total.
class TermCollisionError : public Error {
public:
    using Error::Error;
};

// A sack (or operation requiring fairness) turned out not to be fair.
// `witness` is the smallest total at which the check failed, or -1 when
// the failure has no single witnessing total.
class NotFairError : public Error {
public:
    explicit NotFairError(const std::string& message, std::int64_t witness = -1)
        : Error(message), witness_(witness) {}

    std::int64_t witness() const { return witness_; }

private:
    std::int64_t witness_;
};

// An operation restricted to atomic sacks was given a non-atomic one.
class NotAtomicError : public Error {
public:
    using Error::Error;
};

// An exhaustive search was asked to run past its configured bound.
class BoundExceededError : public Error {
public:
    using Error::Error;
};

} // namespace fairsack
