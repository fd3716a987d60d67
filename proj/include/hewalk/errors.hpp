#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace hewalk {

/// %g rendering for diagnostics, so tiny weights do not print as 0.000000.
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Base of every error raised by the library. Callers that only need a
// diagnostic can catch this and read what().
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Amplitude reached the lattice edge; the lattice is too small for the
// requested evolution.
class BoundaryLeakageError : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class DegenerateBranchError : public Error {
public:
    using Error::Error;
};

class UnreliableSiteError : public Error {
public:
    using Error::Error;
};

class EstimationError : public Error {
public:
    using Error::Error;
};

class DisplacementTruncationError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace hewalk
