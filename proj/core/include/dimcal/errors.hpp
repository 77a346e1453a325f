#ifndef DIMCAL_ERRORS_HPP
#define DIMCAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dimcal {

/**
 * @file errors.hpp
 * @brief Exception hierarchy separating caller mistakes from bad inputs and
 * failed computations, so the CLI can map each class to a distinct exit code.
 */

// Out-of-range or inconsistent arguments (bad k, bad r, mismatched shapes).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid call on data that violates a contract (non-finite
// entries, rows not summing to one).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or parsed; message carries file/line diagnostics.
class IngestionError : public std::runtime_error {
public:
    explicit IngestionError(const std::string& what) : std::runtime_error(what) {}
};

// A computation started and failed (e.g. the optimizer produced non-finite
// coordinates); `iteration()` reports where, -1 if not applicable.
class RunError : public std::runtime_error {
public:
    explicit RunError(const std::string& what, long iteration = -1)
        : std::runtime_error(what), iteration_(iteration) {}

    long iteration() const { return iteration_; }

private:
    long iteration_;
};

} // namespace dimcal

#endif
