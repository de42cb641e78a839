#pragma once

#include <stdexcept>
#include <string>

namespace relax2d {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied parameters (grids, tolerances, keyword files).
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent measured data.
struct DataError : Error {
    using Error::Error;
};

// Solver failure (divergence, degenerate iterate).
struct SolverError : Error {
    using Error::Error;
};

// Zero iterate: the UPEN rule cannot produce parameters from it.
struct DegenerateIterateError : SolverError {
    using SolverError::SolverError;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace relax2d
