#pragma once

#include <stdexcept>
#include <string>

namespace qrdeg {

/// Input that violates a documented precondition (bad degree, non-normal subgroup, ...).
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configurable resource cap was exceeded. The computation was not attempted.
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Data disagrees with a recorded expectation (order mismatch, failed self-check).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

} // namespace qrdeg
