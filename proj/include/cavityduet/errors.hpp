#pragma once

#include <stdexcept>
#include <string>

namespace cduet {

// Process exit codes, shared between the CLI and the tests that drive it.
enum class ExitCode : int {
    ok = 0,
    parse_error = 2,
    validation_error = 3,
    numerical_failure = 4,
    factorization_breakdown = 5,
    io_error = 6,
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pole of the Wei-Norman coordinates (the factorization ceases to exist
// locally even though the evolution itself is regular).
struct FactorizationBreakdown : std::runtime_error {
    double tau;
    FactorizationBreakdown(const std::string& msg, double tau_at)
        : std::runtime_error(msg), tau(tau_at) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cduet
