#include <epl/distribution.hpp>

#include <epl/quadrature.hpp>
#include <epl/rng.hpp>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace epl {

namespace {

void require_finite_nonneg(double x, const char* who) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error(std::string(who) +
                                ": x must be finite and >= 0");
}

void require_finite_pos(double x, const char* who) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error(std::string(who) + ": x must be finite and > 0");
}

// 1 + 3 theta + theta^2, the normalizing constant of the latent count law.
double norm_const(double theta) { return 1.0 + theta * (3.0 + theta); }

}  // namespace

void EplParams::validate() const {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("EplParams: beta must be finite and > 0");
    if (!std::isfinite(theta) || theta <= 0.0)
        throw std::domain_error("EplParams: theta must be finite and > 0");
}

double cdf(double x, const EplParams& p) {
    require_finite_nonneg(x, "cdf");
    const double t = p.theta;
    const double C = norm_const(t);
    // v = 1 - e^{-beta x}; the cdf rearranges to a polynomial in v with
    // positive coefficients, so there is no cancellation at either tail:
    //   F = v [theta (2+theta)(1+theta)^2 + v (C + theta^2 (2+theta))]
    //       / (C (theta + v)^2).
    const double v = -std::expm1(-p.beta * x);
    const double d = t + v;
    const double onep = 1.0 + t;
    const double num =
        v * (t * (2.0 + t) * onep * onep + v * (C + t * t * (2.0 + t)));
    return num / (C * d * d);
}

double survival(double x, const EplParams& p) {
    require_finite_nonneg(x, "survival");
    const double t = p.theta;
    const double C = norm_const(t);
    const double w = std::exp(-p.beta * x);
    const double d = 1.0 + t - w;
    return t * t * w * (1.0 + t + (2.0 + t) * d) / (C * d * d);
}

double log_survival(double x, const EplParams& p) {
    require_finite_nonneg(x, "log_survival");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x);  // harmless underflow to 0
    const double d = 1.0 + t - w;
    return 2.0 * std::log(t) - p.beta * x +
           std::log(1.0 + t + (2.0 + t) * d) - std::log(norm_const(t)) -
           2.0 * std::log(d);
}

double pdf(double x, const EplParams& p) {
    require_finite_pos(x, "pdf");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x);
    const double d = 1.0 + t - w;
    const double onep = 1.0 + t;
    return p.beta * t * t * onep * onep * w * (3.0 + t - w) /
           (norm_const(t) * d * d * d);
}

double log_pdf(double x, const EplParams& p) {
    require_finite_pos(x, "log_pdf");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x);
    const double d = 1.0 + t - w;
    return std::log(p.beta) + 2.0 * std::log(t) + 2.0 * std::log1p(t) -
           p.beta * x + std::log(3.0 + t - w) - std::log(norm_const(t)) -
           3.0 * std::log(d);
}

double pdf_decomposed(double x, const EplParams& p) {
    require_finite_pos(x, "pdf_decomposed");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x);
    const double g1 = w / (1.0 + t - w);  // ((1+theta) e^{beta x} - 1)^{-1}
    const double g2 = g1 * g1;
    const double g3 = g2 * g1;
    return p.beta * t * t / norm_const(t) *
           ((3.0 + t) * g1 + (5.0 + t) * g2 + 2.0 * g3);
}

double hazard(double x, const EplParams& p) {
    require_finite_pos(x, "hazard");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x);
    const double d = 1.0 + t - w;
    const double onep = 1.0 + t;
    return p.beta * onep * onep * (3.0 + t - w) /
           (d * (1.0 + t + (2.0 + t) * d));
}

double quantile_closed_form(double u, const EplParams& p) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile_closed_form: u must lie in (0,1)");
    const double t = p.theta;
    const double s = 1.0 - u;
    const double c = norm_const(t);
    const double a = c / (t * t);
    const double g = (1.0 + t) * (3.0 + t);
    const double onep = 1.0 + t;
    // Solving S(x) = 1-u for E = e^{-beta x} gives the quadratic
    //   (2+theta+as) E^2 - (g+2as(1+theta)) E + as(1+theta)^2 = 0.
    // The discriminant simplifies to g^2 + 2h(1+theta) (h = 2as(1+theta)),
    // which is free of the cancellation the textbook form carries.
    const double h = 2.0 * a * s * onep;
    const double T = g + h;
    const double root = std::sqrt(g * g + 2.0 * h * onep);
    const double q = t * h - g;
    if (q >= 0.0) {
        // Here E -> 1 as u -> 0, so -log(E) cancels; rationalizing E - 1
        // against the conjugate root leaves a term proportional to u.
        const double em1 = -(2.0 * h * onep * c * u) / ((q + root) * (T + root));
        return -std::log1p(em1) / p.beta;
    }
    // Vieta form of the root in (0,1); stays accurate as u -> 1.
    const double E = h * onep / (T + root);
    return -std::log(E) / p.beta;
}

double quantile(double u, const EplParams& p) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile: u must lie in (0,1)");
    // Bracketed root-finding. Below the median the cdf equation is solved
    // directly; above it the equivalent survival equation is used instead:
    // 1 - u is exact there while the cdf saturates near 1, so this keeps
    // the deep right tail fully resolved.
    const double s = 1.0 - u;
    auto g = [&](double x) {
        return u < 0.5 ? cdf(x, p) - u : s - survival(x, p);
    };
    double hi = 1.0 / p.beta;
    while (g(hi) < 0.0) hi *= 2.0;
    double lo = 0.0;
    boost::math::tools::eps_tolerance<double> tol(
        std::numeric_limits<double>::digits - 2);
    std::uintmax_t max_iter = 200;
    auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, max_iter);
    return 0.5 * (r.first + r.second);
}

double mean_residual_life(double x0, const EplParams& p) {
    require_finite_nonneg(x0, "mean_residual_life");
    // m(x0) = integral_0^inf S(x0+t)/S(x0) dt; the ratio is evaluated in log
    // space so the computation survives arbitrarily deep tails.
    const double ls0 = log_survival(x0, p);
    auto ratio = [&](double t) { return std::exp(log_survival(x0 + t, p) - ls0); };
    QuadResult q = integrate_semi_infinite(ratio, 1e-12);
    if (!q.ok)
        throw std::runtime_error("mean_residual_life: quadrature failed");
    return q.value;
}

double mean_residual_life_closed_form(double x0, const EplParams& p) {
    require_finite_nonneg(x0, "mean_residual_life_closed_form");
    const double t = p.theta;
    const double w = std::exp(-p.beta * x0);
    const double d = 1.0 + t - w;
    // e1 = -e^{beta x0} log(1 - e^{-beta x0}/(1+theta)) arranged as
    // -log1p(-q)/(q (1+theta)) with q = w/(1+theta): stable for all x0 and
    // tending to 1/(1+theta) in the deep tail.
    const double qq = w / (1.0 + t);
    const double e1 = (qq > 0.0) ? -std::log1p(-qq) / (qq * (1.0 + t))
                                 : 1.0 / (1.0 + t);
    return (1.0 + (2.0 + t) * d * e1) /
           (p.beta * (2.0 + t + (1.0 + t) / d));
}

DataSet sample(std::size_t n, const EplParams& p, std::uint64_t seed) {
    if (n < 1)
        throw std::domain_error("sample: n must be >= 1");
    SplitMix64 gen(seed);
    DataSet ds;
    ds.label = "epl-sample";
    ds.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        ds.values.push_back(quantile_closed_form(gen.uniform01_open(), p));
    return ds;
}

DataSet sample_compound(std::size_t n, const EplParams& p,
                        std::uint64_t seed) {
    if (n < 1)
        throw std::domain_error("sample_compound: n must be >= 1");
    SplitMix64 gen(seed);
    DataSet ds;
    ds.label = "epl-sample-compound";
    ds.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t count =
            gen.zero_truncated_poisson_lindley(p.theta);
        double m = gen.exponential(p.beta);
        for (std::uint64_t k = 1; k < count; ++k)
            m = std::min(m, gen.exponential(p.beta));
        ds.values.push_back(m);
    }
    return ds;
}

}  // namespace epl
