#pragma once

#include <epl/series.hpp>

namespace epl {

// Polylogarithm L_n(z) = sum_{j>=1} z^j / j^n for z in (0,1), n >= 0.
// n = 0 and n = 1 use the closed forms z/(1-z) and -log(1-z); higher orders
// sum the series under cfg's truncation rule.
SeriesResult polylog(int n, double z, const SeriesConfig& cfg = {});

// Incomplete beta with a shifted first exponent:
//   integral_0^x t^a (1-t)^{b-1} dt
// (note t^a, not the conventional t^{a-1}). Kept alongside the conventional
// form so callers can test both readings of formulas written in this style.
double incomplete_beta_shifted(double x, double a, double b);

// Conventional unnormalized incomplete beta: integral_0^x t^{a-1}(1-t)^{b-1} dt.
double incomplete_beta(double x, double a, double b);

// Unnormalized complement: integral_x^1 t^{a-1}(1-t)^{b-1} dt.
double incomplete_beta_complement(double x, double a, double b);

// log Gamma(x) for x > 0.
double log_gamma(double x);

}  // namespace epl
