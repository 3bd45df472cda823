#include <epl/special.hpp>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace epl {

SeriesResult polylog(int n, double z, const SeriesConfig& cfg) {
    cfg.validate();
    if (n < 0)
        throw std::domain_error("polylog: order must be >= 0");
    if (!(z > 0.0 && z < 1.0))
        throw std::domain_error("polylog: argument must lie in (0,1)");

    SeriesResult res;
    if (n == 0) {
        res.value = z / (1.0 - z);
        res.terms_used = 1;
        return res;
    }
    if (n == 1) {
        res.value = -std::log1p(-z);
        res.terms_used = 1;
        return res;
    }

    NeumaierSum<double> acc;
    double zj = 1.0;
    std::size_t j = 0;
    res.converged = false;
    while (j < cfg.max_terms) {
        ++j;
        zj *= z;
        double term = zj / std::pow(static_cast<double>(j), n);
        acc.add(term);
        res.max_term = std::max(res.max_term, term);
        if (term < cfg.rel_tol * acc.value()) {
            res.converged = true;
            break;
        }
    }
    res.terms_used = j;
    res.value = acc.value();
    return res;
}

double incomplete_beta_shifted(double x, double a, double b) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("incomplete_beta_shifted: x must lie in (0,1)");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta_shifted: a and b must be > 0");
    // integral_0^x t^a (1-t)^{b-1} dt is the conventional integral with
    // first parameter a+1.
    return boost::math::beta(a + 1.0, b, x);
}

double incomplete_beta(double x, double a, double b) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("incomplete_beta: x must lie in (0,1)");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta: a and b must be > 0");
    return boost::math::beta(a, b, x);
}

double incomplete_beta_complement(double x, double a, double b) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("incomplete_beta_complement: x must lie in (0,1)");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta_complement: a and b must be > 0");
    return boost::math::betac(a, b, x);
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: x must be > 0");
    return boost::math::lgamma(x);
}

}  // namespace epl
