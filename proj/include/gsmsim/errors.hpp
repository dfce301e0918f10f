#pragma once

#include <stdexcept>
#include <string>

namespace gsmsim {

// Base class for all gsmsim errors so the CLI can map them to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration value; carries the offending field name.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error("config error: " + field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Invalid argument to an operation (negative energy amount, zero bits, ...).
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error("argument error: " + what) {}
};

// Field partitioning or point lookup failure.
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& what) : Error("geometry error: " + what) {}
};

// Protocol state machine misuse (e.g. two sinks on the same trajectory).
class ProtocolError : public Error {
public:
    explicit ProtocolError(const std::string& what) : Error("protocol error: " + what) {}
};

// LP construction failure (unreachable node, empty schedule).
class ModelError : public Error {
public:
    explicit ModelError(const std::string& what) : Error("modeling error: " + what) {}
};

// Numerical breakdown inside the simplex solver.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error("solver error: " + what) {}
};

} // namespace gsmsim
