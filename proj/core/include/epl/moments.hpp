#pragma once

#include <epl/distribution.hpp>
#include <epl/series.hpp>

#include <cstdint>

namespace epl {

// Identifies the r-th moment of the i-th smallest of n observations.
struct OrderStatSpec {
    int i = 1;
    int n = 1;
    int r = 1;

    void validate() const {
        if (n < 1 || i < 1 || i > n)
            throw std::domain_error("OrderStatSpec: need 1 <= i <= n");
        if (r < 1) throw std::domain_error("OrderStatSpec: need r >= 1");
    }
};

// How to truncate the order-statistic moment series: adaptively once the
// inner tails stop contributing (SeriesConfig::max_terms still caps the
// work), or by running the inner index j all the way to the configured cap
// (the convention used for the reference tables, j <= 100).
enum class SeriesTruncation { tolerance, fixed_cap };

// Moment generating function M(t) = E(e^{-t X}) for t > -beta.
SeriesResult mgf(double t, const EplParams& p, const SeriesConfig& cfg = {});

// E(X^r) via polylogarithms.
SeriesResult raw_moment(int r, const EplParams& p,
                        const SeriesConfig& cfg = {});

double mean(const EplParams& p);
double variance(const EplParams& p);

// Var(X)/E(X)^2 — the squared coefficient of variation (the ratio itself,
// not its square root; hence the name).
double cv_ratio(const EplParams& p);

// Density of the i-th order statistic of a sample of n.
double order_stat_pdf(double x, int i, int n, const EplParams& p);

// E(X_{i:n}^r) by the alternating triple series. Inner sums are accumulated
// in extended precision with compensation and, in tolerance mode, summed to
// the extended-precision floor (cfg.rel_tol is honoured only if tighter):
// for central ranks the outer alternating sum cancels up to ~13 digits, so
// looser inner cuts and plain double arithmetic would both corrupt the
// leading digits. cancellation_warning reports when the largest
// intermediate term exceeds 1e6 times the result.
SeriesResult order_stat_moment(
    const OrderStatSpec& spec, const EplParams& p,
    SeriesTruncation mode = SeriesTruncation::tolerance,
    const SeriesConfig& cfg = {});

// E(X_{i:n}^r) by adaptive quadrature of x^r f_{i:n}(x); the authoritative
// value when the series and quadrature disagree.
double order_stat_moment_quadrature(const OrderStatSpec& spec,
                                    const EplParams& p);

// Simulation check of the extreme-value limits: minima scaled by
// c_n = n f(0+) against the unit exponential, and maxima shifted by
// b_n = quantile(1 - 1/n) against the Gumbel law with rate beta.
struct ExtremeValueReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    double c_n = 0.0;
    double b_n = 0.0;
    double minima_ks_distance = 0.0;
    double maxima_ks_distance = 0.0;
};

ExtremeValueReport extreme_value_check(std::size_t n, const EplParams& p,
                                       std::size_t trials,
                                       std::uint64_t seed);

}  // namespace epl
