#pragma once

#include <stdexcept>

namespace bakerlab {

/// A computation was refused because its working set would exceed a guard.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be written or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bakerlab

namespace bakerlab {

/// Too many points exhausted their iteration budget without capture.
class ConvergenceError : public ResourceLimitError {
public:
    using ResourceLimitError::ResourceLimitError;
};

} // namespace bakerlab
