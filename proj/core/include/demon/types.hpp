#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace demon {

/// Vertex label as it appears in input files. Opaque, never reinterpreted.
using VertexId = std::uint64_t;

/// Dense internal vertex index assigned in first-seen order.
using NodeIndex = std::uint32_t;

using CommunityId = std::uint64_t;

/// Input could not be ingested. `line()` is 1-based, 0 when not line specific.
class IngestError : public std::runtime_error {
public:
    IngestError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SelfLoopError : public std::invalid_argument {
public:
    explicit SelfLoopError(VertexId v)
        : std::invalid_argument("self-loop on vertex " + std::to_string(v)) {}
};

/// Out-of-range algorithm parameter (epsilon outside [0,1], max_iter == 0, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal structure no longer agrees with the state it mirrors.
class CoherenceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace demon
