#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capplan/errors.hpp"

namespace capplan {

// n observations of k regressors plus the response they explain. The
// intercept column is implicit; fit_ols prepends it.
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;    // row-major, rows*cols
    std::vector<double> response;  // rows

    DesignMatrix() = default;
    DesignMatrix(std::size_t n, std::size_t k)
        : rows(n), cols(k), values(n * k, 0.0), response(n, 0.0) {}

    double& x(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double x(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

struct OlsFit {
    double intercept = 0.0;
    std::vector<double> coefficients;    // slope per regressor column
    std::vector<double> residuals;       // y - yhat, one per row
    double r_squared = 0.0;
    std::vector<double> standard_errors; // intercept first; empty when no residual dof
};

// Minimizes ||A c - b|| by Householder QR. A is row-major rows x cols with
// no implicit intercept. Columns whose pivot falls below 1e-10 of the
// largest pivot are reported as dependent via singular_design_error.
std::vector<double> least_squares(std::size_t rows, std::size_t cols,
                                  std::span<const double> a, std::span<const double> b);

// Ordinary least squares of the response on the regressors plus intercept.
OlsFit fit_ols(const DesignMatrix& data);

// intercept + sum(coefficients[i] * regressors[i]); unbounded either way.
double predict(const OlsFit& fit, std::span<const double> regressors);

struct AnovaSummary {
    double sse = 0.0;
    double ssr = 0.0;
    double sst = 0.0;
    double r_squared = 0.0;
    double f_statistic = 0.0;           // +inf on a saturated (exact) fit
    bool saturated = false;
    std::vector<double> standard_errors;
};

// Decomposes variance for a fit produced from this exact data; raises
// consistency_error when the pair does not match.
AnovaSummary anova_summary(const OlsFit& fit, const DesignMatrix& data);

}  // namespace capplan
