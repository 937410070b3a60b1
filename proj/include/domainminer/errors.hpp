#ifndef DOMAINMINER_ERRORS_HPP
#define DOMAINMINER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace domainminer {

// Shape/arity violations: mismatched dimensions, wrong fill length, bad index.
struct ArityError : std::invalid_argument {
    explicit ArityError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed input file. Carries a 1-based line number when known (0 otherwise).
struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

// Request exceeds a documented exhaustive-search bound.
struct SizeLimitError : std::invalid_argument {
    explicit SizeLimitError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Internal consistency check failed (e.g. a decoded model that does not
// satisfy the policy it claims to encode).
struct IntegrityError : std::logic_error {
    explicit IntegrityError(const std::string& msg) : std::logic_error(msg) {}
};

// External solver misbehaved (bad exit status, unparseable output).
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Inconsistent option combination (e.g. mutually exclusive encoding flags).
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace domainminer

#endif
