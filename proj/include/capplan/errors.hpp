#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace capplan {

// Base class for all toolkit failures. CLI maps these to exit code 1.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition violation on an otherwise well-formed call (bad window,
// p < 1, delta out of [0,1), non-positive base throughput, ...).
class domain_error : public error {
public:
    using error::error;
};

// Design matrix has linearly dependent columns. Column index 0 is the
// intercept; regressor j is column j.
class singular_design_error : public error {
public:
    singular_design_error(const std::string& what, std::vector<std::size_t> columns)
        : error(what), dependent_columns(std::move(columns)) {}
    std::vector<std::size_t> dependent_columns;
};

// Fewer rows than coefficients to fit.
class underdetermined_error : public error {
public:
    using error::error;
};

// Regressor vector length does not match the fitted model.
class arity_error : public error {
public:
    using error::error;
};

// Every row was at or above the saturation threshold; nothing to train on.
class fully_saturated_error : public error {
public:
    using error::error;
};

// Non-positive value fed to a logarithmic fit.
class log_domain_error : public error {
public:
    using error::error;
};

// Doubling period requested for a flat or shrinking growth model.
class no_doubling_error : public error {
public:
    using error::error;
};

// Requested cell is not present in a scaling table.
class lookup_error : public error {
public:
    using error::error;
};

// Fit and data passed to a diagnostics routine do not belong together.
class consistency_error : public error {
public:
    using error::error;
};

}  // namespace capplan
