#pragma once

#include <stdexcept>
#include <string>

namespace flowmap {

// Base of every error the library throws. The CLI maps InputError and
// ConfigError to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable stream, missing header, unknown warehouse, bad CLI input.
class InputError : public Error {
public:
    using Error::Error;
};

// Pipeline configuration that violates a parameter invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Degenerate geometry or an empty intermediate result inside the pipeline.
class GeometryError : public Error {
public:
    using Error::Error;
};

}  // namespace flowmap
