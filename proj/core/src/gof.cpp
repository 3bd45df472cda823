#include <epl/gof.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace epl {

namespace {

// Dense matrix helpers for the Marsaglia-Tsang-Wang evaluation. Powers are
// computed with a base-1e140 scaling exponent so intermediate entries stay
// inside double range for any n.
void mat_multiply(const std::vector<double>& a, const std::vector<double>& b,
                  std::vector<double>& c, int m) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k) s += a[i * m + k] * b[k * m + j];
            c[i * m + j] = s;
        }
}

void mat_power(const std::vector<double>& a, int ea, std::vector<double>& v,
               int& ev, int m, std::size_t n) {
    if (n == 1) {
        v = a;
        ev = ea;
        return;
    }
    mat_power(a, ea, v, ev, m, n / 2);
    std::vector<double> b(m * m);
    mat_multiply(v, v, b, m);
    int eb = 2 * ev;
    if (n % 2 == 0) {
        v = b;
        ev = eb;
    } else {
        mat_multiply(a, b, v, m);
        ev = ea + eb;
    }
    if (v[(m / 2) * m + (m / 2)] > 1e140) {
        for (double& x : v) x *= 1e-140;
        ev += 140;
    }
}

// P(D_n < d) for the exact finite-n Kolmogorov distribution.
double ks_exact_cdf(std::size_t n, double d) {
    const double nd = static_cast<double>(n) * d;
    const double s = d * d * static_cast<double>(n);
    // Published right-tail shortcut: beyond this region the exact value
    // matches the asymptotic-with-correction form to ~7 digits and the
    // matrix power would only burn time.
    if (s > 7.24 || (s > 3.76 && n > 99))
        return 1.0 -
               2.0 * std::exp(-(2.000071 + 0.331 / std::sqrt(double(n)) +
                                1.409 / double(n)) *
                              s);
    const int k = static_cast<int>(nd) + 1;
    const int m = 2 * k - 1;
    const double h = k - nd;

    std::vector<double> H(m * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            H[i * m + j] = (i - j + 1 < 0) ? 0.0 : 1.0;
    for (int i = 0; i < m; ++i) {
        H[i * m] -= std::pow(h, i + 1);
        H[(m - 1) * m + i] -= std::pow(h, m - i);
    }
    H[(m - 1) * m] += (2.0 * h - 1.0 > 0.0 ? std::pow(2.0 * h - 1.0, m) : 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i - j + 1 > 0)
                for (int g = 1; g <= i - j + 1; ++g) H[i * m + j] /= g;

    std::vector<double> Q(m * m);
    int eQ = 0;
    mat_power(H, 0, Q, eQ, m, n);
    double prob = Q[(k - 1) * m + (k - 1)];
    for (std::size_t i = 1; i <= n; ++i) {
        prob *= static_cast<double>(i) / static_cast<double>(n);
        if (prob < 1e-140) {
            prob *= 1e140;
            eQ -= 140;
        }
    }
    return prob * std::pow(10.0, eQ);
}

}  // namespace

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf_fn) {
    if (values.empty())
        throw std::runtime_error("ks_statistic: no observations");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::domain_error("ks_statistic: values must be finite");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    double prev_f = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf_fn(values[i]);
        if (!(f >= 0.0 && f <= 1.0))
            throw std::runtime_error("ks_statistic: cdf left [0,1]");
        if (f < prev_f - 1e-12)
            throw std::runtime_error("ks_statistic: cdf is not monotone");
        prev_f = std::max(prev_f, f);
        const double upper = (static_cast<double>(i) + 1.0) / n - f;
        const double lower = f - static_cast<double>(i) / n;
        d = std::max({d, upper, lower});
    }
    return d;
}

double ks_statistic(const DataSet& data,
                    const std::function<double(double)>& cdf_fn) {
    data.validate();
    return ks_statistic(data.values, cdf_fn);
}

double kolmogorov_asymptotic_sf(double t) {
    if (!(t > 0.0)) return 1.0;
    if (t < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100000; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_exact_sf(std::size_t n, double d) {
    if (n < 1) throw std::domain_error("ks_exact_sf: n must be >= 1");
    if (d <= 0.0) return 1.0;
    if (d >= 1.0) return 0.0;
    return std::clamp(1.0 - ks_exact_cdf(n, d), 0.0, 1.0);
}

KsResult ks_test(const DataSet& data,
                 const std::function<double(double)>& cdf_fn,
                 PValueMode mode) {
    KsResult res;
    res.statistic = ks_statistic(data, cdf_fn);
    res.n = data.size();
    const double root_n = std::sqrt(static_cast<double>(res.n));
    res.p_asymptotic = kolmogorov_asymptotic_sf(root_n * res.statistic);
    const bool want_exact =
        mode == PValueMode::exact ||
        (mode == PValueMode::automatic && res.n <= 140);
    res.p_exact = want_exact ? ks_exact_sf(res.n, res.statistic)
                             : std::numeric_limits<double>::quiet_NaN();
    res.p_value = want_exact ? res.p_exact : res.p_asymptotic;
    return res;
}

TwoSampleKsResult ks_two_sample(const DataSet& a, const DataSet& b) {
    a.validate();
    b.validate();
    std::vector<double> xa = a.values, xb = b.values;
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < xa.size() && ib < xb.size()) {
        const double xv = std::min(xa[ia], xb[ib]);
        while (ia < xa.size() && xa[ia] <= xv) ++ia;
        while (ib < xb.size() && xb[ib] <= xv) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na -
                                 static_cast<double>(ib) / nb));
    }
    TwoSampleKsResult res;
    res.statistic = d;
    const double n_eff = na * nb / (na + nb);
    res.p_value = kolmogorov_asymptotic_sf(std::sqrt(n_eff) * d);
    return res;
}

}  // namespace epl
