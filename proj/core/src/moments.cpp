#include <epl/moments.hpp>

#include <epl/gof.hpp>
#include <epl/quadrature.hpp>
#include <epl/rng.hpp>
#include <epl/special.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace epl {

namespace {

double norm_const(double theta) { return 1.0 + theta * (3.0 + theta); }

long double ipow(long double base, int e) {
    long double r = 1.0L;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

long double binom_ld(int n, int k) {
    if (k < 0 || k > n) return 0.0L;
    long double r = 1.0L;
    for (int j = 1; j <= k; ++j)
        r *= static_cast<long double>(n - k + j) / static_cast<long double>(j);
    return r;
}

double factorial(int r) {
    double f = 1.0;
    for (int k = 2; k <= r; ++k) f *= k;
    return f;
}

}  // namespace

SeriesResult mgf(double t, const EplParams& p, const SeriesConfig& cfg) {
    cfg.validate();
    if (!(t > -p.beta))
        throw std::domain_error("mgf: requires t > -beta");
    const double th = p.theta;
    const double z = 1.0 / (1.0 + th);
    SeriesResult res;
    res.converged = false;
    NeumaierSum<double> acc;
    double zpow = z;  // (1+theta)^{-(j+1)} at j = 0
    for (std::size_t j = 0; j < cfg.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double binom = (dj + 2.0) * (dj + 1.0) / 2.0;
        const double term =
            binom * zpow *
            ((3.0 + th) / (p.beta * (dj + 1.0) + t) -
             1.0 / (p.beta * (dj + 2.0) + t));
        acc.add(term);
        res.max_term = std::max(res.max_term, std::abs(term));
        res.terms_used = j + 1;
        if (std::abs(term) < cfg.rel_tol * std::abs(acc.value())) {
            res.converged = true;
            break;
        }
        zpow *= z;
    }
    res.value = p.beta * th * th / norm_const(th) * acc.value();
    return res;
}

SeriesResult raw_moment(int r, const EplParams& p, const SeriesConfig& cfg) {
    if (r < 1) throw std::domain_error("raw_moment: r must be >= 1");
    const double th = p.theta;
    const double z = 1.0 / (1.0 + th);
    const SeriesResult lower = polylog(r - 1, z, cfg);
    const SeriesResult upper = polylog(r, z, cfg);
    SeriesResult res;
    res.value = factorial(r) * th * th /
                (std::pow(p.beta, r) * norm_const(th)) *
                (lower.value + (2.0 + th) * upper.value);
    res.terms_used = std::max(lower.terms_used, upper.terms_used);
    res.converged = lower.converged && upper.converged;
    return res;
}

double mean(const EplParams& p) {
    const double th = p.theta;
    return th / (p.beta * norm_const(th)) *
           (1.0 + th * (2.0 + th) * std::log1p(1.0 / th));
}

double variance(const EplParams& p) {
    const double m1 = mean(p);
    return raw_moment(2, p).value - m1 * m1;
}

double cv_ratio(const EplParams& p) {
    const double m1 = mean(p);
    return variance(p) / (m1 * m1);
}

double order_stat_pdf(double x, int i, int n, const EplParams& p) {
    OrderStatSpec{i, n, 1}.validate();
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("order_stat_pdf: x must be finite and > 0");
    const double logbinom = log_gamma(n + 1.0) - log_gamma(double(i)) -
                            log_gamma(double(n - i + 1));
    const double f = cdf(x, p);
    const double s = survival(x, p);
    // Guard the 0^0 cases at the support edges.
    const double fpow = (i == 1) ? 1.0 : std::pow(f, i - 1);
    const double spow = (i == n) ? 1.0 : std::pow(s, n - i);
    return std::exp(logbinom) * fpow * spow * pdf(x, p);
}

SeriesResult order_stat_moment(const OrderStatSpec& spec, const EplParams& p,
                               SeriesTruncation mode,
                               const SeriesConfig& cfg) {
    spec.validate();
    cfg.validate();
    const int n = spec.n, i = spec.i, r = spec.r;
    const long double th = p.theta;
    const long double z = 1.0L / (1.0L + th);
    const long double C = 1.0L + th * (3.0L + th);

    SeriesResult res;
    NeumaierSum<long double> outer;
    long double max_outer = 0.0L;
    std::size_t max_j = 0;
    bool all_converged = true;

    // Truncation error in an inner series passes through the outer
    // alternating sum, which cancels by ~1e10 at central ranks, so stopping
    // the inner tail at cfg.rel_tol would leave that tolerance amplified in
    // the result. The tail is instead driven to the extended-precision
    // rounding floor; the geometric decay makes the extra terms cheap.
    const long double inner_tol =
        std::min(static_cast<long double>(cfg.rel_tol),
                 0.5L * std::numeric_limits<long double>::epsilon());

    for (int k = n - i + 1; k <= n; ++k) {
        const long double coeff_k = binom_ld(k - 1, n - i) * binom_ld(n, k) *
                                    ipow(th * th / ((1.0L + th) * C), k);
        for (int l = 0; l <= k; ++l) {
            const int sign_exp = k - n + i + l - 1;
            const long double sign = (sign_exp % 2 == 0) ? 1.0L : -1.0L;
            const long double coeff =
                coeff_k * binom_ld(k, l) * ipow(3.0L + th, k - l) *
                ipow((2.0L + th) / (1.0L + th), l);

            // Inner series: sum_j C(j+2k-1, 2k-1) z^j / (k+l+j)^r. Terms
            // are positive, rise to a peak near j ~ 2k z/(1-z), then decay
            // geometrically towards ratio z.
            NeumaierSum<long double> inner;
            long double binom = 1.0L;  // C(j+2k-1, 2k-1) at j = 0
            long double zpow = 1.0L;
            std::size_t j = 0;
            for (;;) {
                const long double term =
                    binom * zpow / ipow(static_cast<long double>(k + l + j), r);
                inner.add(term);
                if (mode == SeriesTruncation::fixed_cap) {
                    if (j >= cfg.max_terms) break;
                } else {
                    // Geometric tail bound once the term ratio has dropped
                    // below one.
                    const long double ratio =
                        static_cast<long double>(j + 2 * k) /
                        static_cast<long double>(j + 1) * z;
                    if (ratio < 1.0L &&
                        term * ratio / (1.0L - ratio) <
                            inner_tol * inner.value()) {
                        break;
                    }
                    if (j + 1 >= cfg.max_terms) {
                        all_converged = false;
                        break;
                    }
                }
                binom *= static_cast<long double>(j + 2 * k) /
                         static_cast<long double>(j + 1);
                zpow *= z;
                ++j;
            }
            max_j = std::max(max_j, j);
            const long double contribution = sign * coeff * inner.value();
            max_outer = std::max(max_outer, std::abs(contribution));
            outer.add(contribution);
        }
    }

    const long double total = static_cast<long double>(factorial(r)) /
                              ipow(static_cast<long double>(p.beta), r) *
                              outer.value();
    res.value = static_cast<double>(total);
    res.terms_used = max_j + 1;
    res.converged = (mode == SeriesTruncation::fixed_cap) || all_converged;
    const long double scale = std::abs(total) > 0.0L ? std::abs(outer.value())
                                                     : 1.0L;
    res.max_term = static_cast<double>(max_outer);
    res.cancellation_warning = max_outer > 1e6L * scale;
    return res;
}

double order_stat_moment_quadrature(const OrderStatSpec& spec,
                                    const EplParams& p) {
    spec.validate();
    auto integrand = [&](double x) {
        // The density underflows to exact zero long before x^r can
        // overflow; checking it first avoids inf * 0 at huge abscissae.
        const double d = order_stat_pdf(x, spec.i, spec.n, p);
        return d > 0.0 ? std::pow(x, spec.r) * d : 0.0;
    };
    QuadResult q = integrate_semi_infinite(integrand, 1e-10);
    if (!q.ok)
        throw std::runtime_error("order_stat_moment_quadrature: failed");
    return q.value;
}

ExtremeValueReport extreme_value_check(std::size_t n, const EplParams& p,
                                       std::size_t trials,
                                       std::uint64_t seed) {
    if (n < 100)
        throw std::domain_error("extreme_value_check: n must be >= 100");
    if (trials < 1000)
        throw std::domain_error("extreme_value_check: trials must be >= 1000");
    ExtremeValueReport rep;
    rep.n = n;
    rep.trials = trials;
    // Norming constants: c_n = 1/F^{-1}(1/n) sends the minima to a unit
    // exponential (asymptotically c_n ~ n f(0+)); the maxima are centered
    // at b_n = F^{-1}(1 - 1/n) with unit scale.
    rep.c_n = 1.0 / quantile(1.0 / static_cast<double>(n), p);
    rep.b_n = quantile(1.0 - 1.0 / static_cast<double>(n), p);

    // The extremes are sampled exactly through the probability integral
    // transform: F(X_{1:n}) ~ 1-(1-U)^{1/n} and F(X_{n:n}) ~ U^{1/n}.
    SplitMix64 gen(seed);
    std::vector<double> minima, maxima;
    minima.reserve(trials);
    maxima.reserve(trials);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t t = 0; t < trials; ++t) {
        const double u1 = gen.uniform01_open();
        const double umin = -std::expm1(std::log1p(-u1) * inv_n);
        minima.push_back(rep.c_n * quantile_closed_form(umin, p));
        const double u2 = gen.uniform01_open();
        const double umax = std::exp(std::log(u2) * inv_n);
        maxima.push_back(quantile_closed_form(umax, p) - rep.b_n);
    }
    rep.minima_ks_distance = ks_statistic(
        std::move(minima), [](double y) { return -std::expm1(-y); });
    const double beta = p.beta;
    rep.maxima_ks_distance =
        ks_statistic(std::move(maxima), [beta](double y) {
            return std::exp(-std::exp(-beta * y));
        });
    return rep;
}

}  // namespace epl
