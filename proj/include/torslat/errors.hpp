#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace torslat {

// User-facing error classes. The CLI maps them onto exit codes:
// input 1, resource 2, theorem violation 3.

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// The ground set failed to absorb the result of a construction it is
// supposed to be closed under.
struct CompletenessError : InputError {
    explicit CompletenessError(const std::string& what) : InputError(what) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A structural statement that must hold for every valid input failed on this
// one. `statement` is a stable machine-readable slug, e.g.
// "cover-label-uniqueness".
struct TheoremViolation : std::runtime_error {
    std::string statement;
    TheoremViolation(std::string stmt, const std::string& detail)
        : std::runtime_error(stmt + ": " + detail), statement(std::move(stmt)) {}
};

}  // namespace torslat
