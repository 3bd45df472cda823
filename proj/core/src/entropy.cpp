#include <epl/entropy.hpp>

#include <epl/quadrature.hpp>
#include <epl/special.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epl {

namespace {

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw std::domain_error("renyi entropy: alpha must be finite and > 0");
    if (alpha == 1.0)
        throw std::domain_error("renyi entropy: alpha must differ from 1");
}

double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

SeriesResult renyi_entropy_series(double alpha, const EplParams& p,
                                  const SeriesConfig& cfg) {
    check_alpha(alpha);
    cfg.validate();
    const double th = p.theta;
    const double C = 1.0 + th * (3.0 + th);
    const double x_edge = (2.0 + th) / (3.0 + th);
    const double log_tol = std::log(cfg.rel_tol);

    double log_sum = -std::numeric_limits<double>::infinity();
    SeriesResult res;
    res.converged = false;
    for (std::size_t j = 0; j < cfg.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double bracket =
            incomplete_beta_complement(x_edge, alpha + 1.0, alpha + dj);
        if (bracket < 0.0)
            throw std::runtime_error("renyi_entropy_series: negative bracket");
        double log_term = -std::numeric_limits<double>::infinity();
        if (bracket > 0.0) {
            log_term = log_gamma(3.0 * alpha + dj) +
                       (2.0 * alpha + dj) * std::log(3.0 + th) -
                       dj * std::log1p(th) - log_gamma(dj + 1.0) +
                       std::log(bracket);
        }
        log_sum = logaddexp(log_sum, log_term);
        res.terms_used = j + 1;
        if (j > 0 && log_term < log_sum + log_tol) {
            res.converged = true;
            break;
        }
    }

    const double log_integral = (alpha - 1.0) * std::log(p.beta) +
                                2.0 * alpha * std::log(th) -
                                alpha * std::log1p(th) - alpha * std::log(C) -
                                log_gamma(3.0 * alpha) + log_sum;
    res.value = log_integral / (1.0 - alpha);
    return res;
}

double renyi_entropy_quadrature(double alpha, const EplParams& p) {
    check_alpha(alpha);
    auto integrand = [&](double x) { return std::exp(alpha * log_pdf(x, p)); };
    QuadResult q = integrate_semi_infinite(integrand, 1e-12);
    if (!q.ok || !(q.value > 0.0))
        throw std::runtime_error(
            "renyi_entropy_quadrature: integration failed");
    return std::log(q.value) / (1.0 - alpha);
}

}  // namespace epl
