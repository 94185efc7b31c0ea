#include "capplan/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace capplan {

namespace {

constexpr double kPivotTolerance = 1e-10;

// Householder QR of a (rows x cols) column-major matrix, in place. On
// return the upper triangle holds R; the reflectors live below it with
// scales in tau. Classic textbook form, no column pivoting.
void householder_qr(std::size_t rows, std::size_t cols, std::vector<double>& a,
                    std::vector<double>& tau) {
    tau.assign(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double* col = a.data() + j * rows;
        double norm = 0.0;
        for (std::size_t i = j; i < rows; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;  // zero pivot; rank check happens later

        const double sign = col[j] >= 0.0 ? 1.0 : -1.0;
        const double alpha = -sign * norm;
        const double u0 = col[j] - alpha;
        for (std::size_t i = j + 1; i < rows; ++i) col[i] /= u0;
        col[j] = alpha;
        tau[j] = -u0 / alpha;

        for (std::size_t k = j + 1; k < cols; ++k) {
            double* ck = a.data() + k * rows;
            double dot = ck[j];
            for (std::size_t i = j + 1; i < rows; ++i) dot += col[i] * ck[i];
            dot *= tau[j];
            ck[j] -= dot;
            for (std::size_t i = j + 1; i < rows; ++i) ck[i] -= col[i] * dot;
        }
    }
}

void apply_qt(std::size_t rows, std::size_t cols, const std::vector<double>& a,
              const std::vector<double>& tau, std::vector<double>& v) {
    for (std::size_t j = 0; j < cols; ++j) {
        if (tau[j] == 0.0) continue;
        const double* col = a.data() + j * rows;
        double dot = v[j];
        for (std::size_t i = j + 1; i < rows; ++i) dot += col[i] * v[i];
        dot *= tau[j];
        v[j] -= dot;
        for (std::size_t i = j + 1; i < rows; ++i) v[i] -= col[i] * dot;
    }
}

void check_rank(std::size_t rows, std::size_t cols, const std::vector<double>& a) {
    double max_pivot = 0.0;
    for (std::size_t j = 0; j < cols; ++j)
        max_pivot = std::max(max_pivot, std::abs(a[j * rows + j]));
    std::vector<std::size_t> dependent;
    for (std::size_t j = 0; j < cols; ++j)
        if (std::abs(a[j * rows + j]) <= kPivotTolerance * max_pivot) dependent.push_back(j);
    if (max_pivot == 0.0 || !dependent.empty()) {
        std::string what = "design matrix is rank deficient; dependent column(s):";
        for (std::size_t j : dependent) what += ' ' + std::to_string(j);
        throw singular_design_error(what, std::move(dependent));
    }
}

// Row norms squared of R^-1 give the diagonal of (A'A)^-1.
std::vector<double> normal_matrix_diagonal(std::size_t rows, std::size_t cols,
                                           const std::vector<double>& a) {
    std::vector<double> rinv(cols * cols, 0.0);  // column-major upper triangular
    for (std::size_t j = 0; j < cols; ++j) {
        rinv[j * cols + j] = 1.0 / a[j * rows + j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= j; ++k) s += a[k * rows + i] * rinv[j * cols + k];
            rinv[j * cols + i] = -s / a[i * rows + i];
        }
    }
    std::vector<double> diag(cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i; j < cols; ++j) diag[i] += rinv[j * cols + i] * rinv[j * cols + i];
    return diag;
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw error(std::string("non-finite value in ") + what);
}

}  // namespace

std::vector<double> least_squares(std::size_t rows, std::size_t cols,
                                  std::span<const double> a, std::span<const double> b) {
    if (rows < cols)
        throw underdetermined_error("need at least " + std::to_string(cols) + " rows, got " +
                                    std::to_string(rows));
    require_finite(a, "design matrix");
    require_finite(b, "response");

    // repack row-major input into columns
    std::vector<double> qr(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) qr[j * rows + i] = a[i * cols + j];

    std::vector<double> tau;
    householder_qr(rows, cols, qr, tau);
    check_rank(rows, cols, qr);

    std::vector<double> qtb(b.begin(), b.end());
    apply_qt(rows, cols, qr, tau, qtb);

    std::vector<double> coef(cols, 0.0);
    for (std::size_t i = cols; i-- > 0;) {
        double s = qtb[i];
        for (std::size_t j = i + 1; j < cols; ++j) s -= qr[j * rows + i] * coef[j];
        coef[i] = s / qr[i * rows + i];
    }
    return coef;
}

OlsFit fit_ols(const DesignMatrix& data) {
    const std::size_t n = data.rows;
    const std::size_t k = data.cols;
    if (n < k + 1)
        throw underdetermined_error("need at least " + std::to_string(k + 1) + " rows to fit " +
                                    std::to_string(k) + " regressors plus intercept, got " +
                                    std::to_string(n));
    require_finite(data.values, "design matrix");
    require_finite(data.response, "response");

    // column-major [1 | X]
    const std::size_t cols = k + 1;
    std::vector<double> qr(n * cols);
    for (std::size_t i = 0; i < n; ++i) {
        qr[i] = 1.0;
        for (std::size_t j = 0; j < k; ++j) qr[(j + 1) * n + i] = data.x(i, j);
    }
    std::vector<double> tau;
    householder_qr(n, cols, qr, tau);
    check_rank(n, cols, qr);

    std::vector<double> qtb(data.response);
    apply_qt(n, cols, qr, tau, qtb);

    std::vector<double> beta(cols, 0.0);
    for (std::size_t i = cols; i-- > 0;) {
        double s = qtb[i];
        for (std::size_t j = i + 1; j < cols; ++j) s -= qr[j * n + i] * beta[j];
        beta[i] = s / qr[i * n + i];
    }

    OlsFit fit;
    fit.intercept = beta[0];
    fit.coefficients.assign(beta.begin() + 1, beta.end());

    fit.residuals.resize(n);
    double sse = 0.0, mean = 0.0;
    for (double y : data.response) mean += y;
    mean /= double(n);
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = fit.intercept;
        for (std::size_t j = 0; j < k; ++j) yhat += fit.coefficients[j] * data.x(i, j);
        fit.residuals[i] = data.response[i] - yhat;
        sse += fit.residuals[i] * fit.residuals[i];
        sst += (data.response[i] - mean) * (data.response[i] - mean);
    }
    fit.r_squared = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 1.0;

    if (n > cols) {
        const double sigma2 = sse / double(n - cols);
        std::vector<double> diag = normal_matrix_diagonal(n, cols, qr);
        fit.standard_errors.resize(cols);
        for (std::size_t j = 0; j < cols; ++j)
            fit.standard_errors[j] = std::sqrt(std::max(0.0, sigma2 * diag[j]));
    }
    return fit;
}

double predict(const OlsFit& fit, std::span<const double> regressors) {
    if (regressors.size() != fit.coefficients.size())
        throw arity_error("model expects " + std::to_string(fit.coefficients.size()) +
                          " regressors, got " + std::to_string(regressors.size()));
    double y = fit.intercept;
    for (std::size_t j = 0; j < regressors.size(); ++j) y += fit.coefficients[j] * regressors[j];
    return y;
}

AnovaSummary anova_summary(const OlsFit& fit, const DesignMatrix& data) {
    const std::size_t n = data.rows;
    const std::size_t k = data.cols;
    if (fit.residuals.size() != n || fit.coefficients.size() != k)
        throw consistency_error("fit dimensions do not match the design matrix");

    double mean = 0.0;
    for (double y : data.response) mean += y;
    mean /= double(n);

    AnovaSummary s;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double yhat = fit.intercept;
        for (std::size_t j = 0; j < k; ++j) yhat += fit.coefficients[j] * data.x(i, j);
        const double y = data.response[i];
        if (std::abs(yhat + fit.residuals[i] - y) > 1e-6 * std::max(1.0, std::abs(y)))
            throw consistency_error("fit residuals do not reproduce the response; "
                                    "was the fit computed from this data?");
        s.sse += fit.residuals[i] * fit.residuals[i];
        s.ssr += (yhat - mean) * (yhat - mean);
        s.sst += (y - mean) * (y - mean);
        scale = std::max(scale, y * y);
    }
    s.r_squared = s.sst > 0.0 ? std::clamp(1.0 - s.sse / s.sst, 0.0, 1.0) : 1.0;
    s.saturated = s.sse <= 1e-12 * std::max(scale, 1.0) || n == k + 1;
    if (s.saturated) {
        s.f_statistic = std::numeric_limits<double>::infinity();
    } else {
        s.f_statistic = (s.ssr / double(k)) / (s.sse / double(n - k - 1));
    }
    s.standard_errors = fit.standard_errors;
    return s;
}

}  // namespace capplan
