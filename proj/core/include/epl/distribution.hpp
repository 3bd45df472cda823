#pragma once

#include <epl/data.hpp>

#include <cstdint>

namespace epl {

// Parameters of the EPL lifetime law: the minimum of N i.i.d. exponential
// (rate beta) variables, where N is a zero-truncated Poisson-Lindley count
// with shape theta.
struct EplParams {
    double beta;
    double theta;

    EplParams(double beta_, double theta_) : beta(beta_), theta(theta_) {
        validate();
    }
    void validate() const;
};

// Distribution function F(x); exact 0 at x = 0 and 1 in the limit, with no
// cancellation at either end.
double cdf(double x, const EplParams& p);

// Density f(x) for x > 0; strictly positive and monotone decreasing.
double pdf(double x, const EplParams& p);
double log_pdf(double x, const EplParams& p);

// Survival S(x) = 1 - F(x); log_survival stays finite long after S itself
// underflows (beta*x beyond ~745).
double survival(double x, const EplParams& p);
double log_survival(double x, const EplParams& p);

// Failure rate h(x) = f(x)/S(x); decreasing, with limit beta at infinity.
double hazard(double x, const EplParams& p);

// Quantile by bracketed root-finding on cdf (authoritative).
double quantile(double u, const EplParams& p);

// Quantile by direct inversion of the cdf's quadratic in e^{-beta x},
// kept as an independently derived cross-check of `quantile`.
double quantile_closed_form(double u, const EplParams& p);

// The density expressed as a positive linear combination of the decreasing
// functions g_i(x) = ((1+theta) e^{beta x} - 1)^{-i}, i = 1..3; equal to
// pdf(x) to machine precision and the basis of the decreasing-density
// argument.
double pdf_decomposed(double x, const EplParams& p);

// Mean residual life m(x0) = E(X - x0 | X > x0), computed by adaptive
// quadrature of the survival ratio (authoritative).
double mean_residual_life(double x0, const EplParams& p);

// Mean residual life in closed form; cross-check of the quadrature route.
double mean_residual_life_closed_form(double x0, const EplParams& p);

// n i.i.d. draws by inverse transform; bit-reproducible for a given seed.
DataSet sample(std::size_t n, const EplParams& p, std::uint64_t seed);

// n draws by the defining construction: a zero-truncated Poisson-Lindley
// count of exponential lifetimes, of which the minimum is taken. Used as a
// distributional oracle for `sample`.
DataSet sample_compound(std::size_t n, const EplParams& p, std::uint64_t seed);

}  // namespace epl
