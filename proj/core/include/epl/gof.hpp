#pragma once

#include <epl/data.hpp>

#include <functional>

namespace epl {

// Which null distribution to use for the KS p-value. `automatic` picks the
// exact finite-n distribution for n <= 140 and the asymptotic Kolmogorov
// series above that (the convention of common statistical software).
enum class PValueMode { automatic, asymptotic, exact };

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;   // per the mode requested of ks_test
    std::size_t n = 0;
    double p_asymptotic = 0.0;
    double p_exact = 0.0;   // NaN when not computed (large n, asymptotic mode)
};

// Sorted-sample KS statistic D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
// Throws if cdf_fn leaves [0,1] or decreases along the sorted sample.
double ks_statistic(const DataSet& data,
                    const std::function<double(double)>& cdf_fn);

// Same statistic for values of any sign (e.g. centered maxima); requires
// finite values only.
double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf_fn);

// One-sample KS test of data against a fully specified continuous cdf.
KsResult ks_test(const DataSet& data,
                 const std::function<double(double)>& cdf_fn,
                 PValueMode mode = PValueMode::automatic);

// Limiting Kolmogorov tail: P(sqrt(n) D_n > t) -> 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 t^2}.
double kolmogorov_asymptotic_sf(double t);

// Exact finite-n tail P(D_n > d) via the Marsaglia-Tsang-Wang matrix-power
// evaluation of the Kolmogorov distribution.
double ks_exact_sf(std::size_t n, double d);

struct TwoSampleKsResult {
    double statistic = 0.0;
    double p_value = 0.0;  // asymptotic, with effective size n1 n2/(n1+n2)
};

TwoSampleKsResult ks_two_sample(const DataSet& a, const DataSet& b);

}  // namespace epl
