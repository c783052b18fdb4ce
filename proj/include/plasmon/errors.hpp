#ifndef PLASMON_ERRORS_HPP
#define PLASMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plasmon {

// Bad user-supplied values: fails fast before any computation starts.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure could not produce a trustworthy result
// (singular system, root-finder divergence, residual too large, ...).
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace plasmon

#endif
