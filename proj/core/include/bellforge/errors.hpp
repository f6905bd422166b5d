#pragma once

#include <stdexcept>
#include <string>

namespace bellforge {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input (bad JSON, scenario mismatch, invalid
// setting index, zero denominator, ...). Maps to CLI exit code 1.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// A size guard refused the computation. Carries the guard that was applied
// and the value the request would have needed. Maps to CLI exit code 2.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, long long cap, long long required)
        : Error(what), cap(cap), required(required) {}

    long long cap;
    long long required;
};

} // namespace bellforge
