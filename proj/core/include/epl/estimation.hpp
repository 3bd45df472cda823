#pragma once

#include <epl/data.hpp>
#include <epl/distribution.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace epl {

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Interval = std::array<double, 2>;

enum class Optimizer {
    quasi_newton_with_analytic_score,
    derivative_free_simplex,
};

struct FitConfig {
    std::optional<EplParams> init;
    double grad_tol = 1e-8;
    std::size_t max_iters = 500;
    Optimizer optimizer = Optimizer::quasi_newton_with_analytic_score;
    bool keep_trace = false;
    // When set, covariance/std errors come from the observed information
    // (finite-difference Hessian of the log-likelihood at the fit) instead
    // of the expected information.
    bool observed_information = false;
    void validate() const;
};

struct FitTracePoint {
    EplParams params;
    double loglik;
};

struct FitResult {
    EplParams params;
    double loglik = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    Matrix2 covariance{};
    std::array<double, 2> std_errors{};
    std::vector<FitTracePoint> optimizer_trace;
};

// Log-likelihood of the sample. Returns -infinity (the caller-visible
// failure flag) if any term's log argument is non-positive, which can only
// happen under non-finite intermediate values at extreme parameters.
double log_likelihood(const DataSet& data, const EplParams& p);

// Gradient of the log-likelihood in (beta, theta).
std::array<double, 2> score(const DataSet& data, const EplParams& p);

// The two zero-mean score identities: each entry is the absolute difference
// between the expectation computed by quadrature against the density and
// its closed form.
std::array<double, 2> score_expectation_identities(const EplParams& p);

// Expected information for a sample of size n: K_n = n * [kappa entries],
// with the inner expectations evaluated by adaptive quadrature.
Matrix2 fisher_information(const EplParams& p, std::size_t n);

FitResult fit_mle(const DataSet& data, const FitConfig& cfg = {});

// Wald intervals: param +/- z_{(1+level)/2} * std_error, as (beta, theta).
std::pair<Interval, Interval> confidence_intervals(const FitResult& fit,
                                                   double level);

// Shared helpers for 2x2 symmetric matrices.
Matrix2 invert_spd_2x2(const Matrix2& m);
bool is_spd_2x2(const Matrix2& m);

}  // namespace epl
