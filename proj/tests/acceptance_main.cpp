// Acceptance harness: each criterion prints one [ok]/[MISS] line per check
// and a final [PASS]/[FAIL] line including its runtime against a fixed
// budget. Exits nonzero if any selected criterion fails.

#include <epl/competitors.hpp>
#include <epl/data.hpp>
#include <epl/distribution.hpp>
#include <epl/entropy.hpp>
#include <epl/estimation.hpp>
#include <epl/gof.hpp>
#include <epl/moments.hpp>
#include <epl/quadrature.hpp>
#include <epl/report.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

namespace {

int g_misses = 0;

double rel_diff(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

void check_abs(const std::string& label, double value, double ref,
               double tol) {
    const double d = std::abs(value - ref);
    const bool ok = d <= tol;
    if (!ok) ++g_misses;
    std::printf("  [%s] %s: %.8g vs %.8g (|diff| %.3g, tol %.3g)\n",
                ok ? "ok" : "MISS", label.c_str(), value, ref, d, tol);
}

void check_rel(const std::string& label, double value, double ref,
               double tol) {
    const double d = rel_diff(value, ref);
    const bool ok = d <= tol;
    if (!ok) ++g_misses;
    std::printf("  [%s] %s: %.8g vs %.8g (rel %.3g, tol %.3g)\n",
                ok ? "ok" : "MISS", label.c_str(), value, ref, d, tol);
}

void check_true(const std::string& label, bool ok,
                const std::string& detail = "") {
    if (!ok) ++g_misses;
    std::printf("  [%s] %s%s%s\n", ok ? "ok" : "MISS", label.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

void criterion1() {
    for (const epl::MomentsSummaryRow& row : epl::moments_summary_table()) {
        const std::string at = fmt("theta=%g", row.theta);
        check_abs("mean " + at, row.mean_value, row.mean_reference, 1e-6);
        check_abs("variance " + at, row.variance_value,
                  row.variance_reference, 1e-6);
        check_abs("cv ratio " + at, row.cv_value, row.cv_reference, 1e-6);
    }
}

void criterion2() {
    for (const epl::OrderStatMomentRow& row : epl::order_stat_table(100)) {
        const std::string at =
            fmt("i=%g r=%g", static_cast<double>(row.i),
                static_cast<double>(row.r));
        if (row.i >= 10) {
            check_rel("series " + at, row.series_value, row.series_reference,
                      1e-3);
        }
        check_rel("quadrature " + at, row.quadrature_value,
                  row.quadrature_reference, 1e-3);
        if (row.i == 1) {
            check_true(
                "series/quadrature discrepancy visible " + at,
                rel_diff(row.series_value, row.quadrature_value) > 0.01,
                fmt("capped series %.6g", row.series_value) +
                    fmt(" vs quadrature %.6g", row.quadrature_value));
        }
    }
}

void fit_criterion(const std::string& fixture) {
    for (const epl::FitComparisonRow& row :
         epl::fit_comparison_table(fixture)) {
        check_true(row.family + " converged", row.converged);
        check_rel(row.family + " parameter 1", row.params[0],
                  row.params_reference[0], 0.02);
        check_rel(row.family + " parameter 2", row.params[1],
                  row.params_reference[1], 0.02);
        check_abs(row.family + " KS statistic", row.ks_statistic,
                  row.ks_reference, 2e-3);
        check_abs(row.family + " KS p-value", row.p_value, row.p_reference,
                  0.02);
    }
}

void criterion3() { fit_criterion("aircon"); }
void criterion4() { fit_criterion("vinyl"); }

void criterion5() {
    for (double beta : {0.5, 1.0, 5.0}) {
        for (double theta : {0.5, 1.0, 5.0}) {
            const epl::EplParams p(beta, theta);
            for (int r = 1; r <= 4; ++r) {
                const auto oracle = epl::integrate_semi_infinite(
                    [&](double x) {
                        const double f = epl::pdf(x, p);
                        return f > 0.0 ? std::pow(x, r) * f : 0.0;
                    });
                const epl::SeriesResult m = epl::raw_moment(r, p);
                check_rel(fmt("raw moment r=%g beta=%g", r, beta) +
                              fmt(" theta=%g", theta),
                          m.value, oracle.value, 1e-7);
            }
        }
    }

    for (double alpha : {0.5, 2.0, 3.0}) {
        for (const auto& [beta, theta] :
             {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
            const epl::EplParams p(beta, theta);
            const epl::SeriesResult s = epl::renyi_entropy_series(alpha, p);
            const double q = epl::renyi_entropy_quadrature(alpha, p);
            check_abs(fmt("Renyi entropy alpha=%g beta=%g", alpha, beta) +
                          fmt(" theta=%g", theta),
                      s.value, q, 1e-4);
        }
    }

    for (const auto& [beta, theta] :
         {std::pair{1.0, 1.0}, std::pair{1.0, 0.5}}) {
        const epl::EplParams p(beta, theta);
        const double h = 1e-4;
        const double m0 = epl::mgf(0.0, p).value;
        const double mp = epl::mgf(h, p).value;
        const double mm = epl::mgf(-h, p).value;
        check_rel(fmt("MGF first derivative beta=%g theta=%g", beta, theta),
                  -(mp - mm) / (2.0 * h), epl::mean(p), 1e-4);
        check_rel(fmt("MGF second derivative beta=%g theta=%g", beta, theta),
                  (mp - 2.0 * m0 + mm) / (h * h),
                  epl::raw_moment(2, p).value, 1e-4);
    }

    const epl::DataSet score_data = epl::sample(50, epl::EplParams(1.0, 1.0),
                                                313);
    for (const auto& [beta, theta] : {std::pair{0.8, 1.3},
                                      std::pair{1.2, 0.7},
                                      std::pair{1.0, 1.0}}) {
        const epl::EplParams p(beta, theta);
        const auto s = epl::score(score_data, p);
        const double hb = 1e-6 * beta, ht = 1e-6 * theta;
        const double fd_b =
            (epl::log_likelihood(score_data,
                                 epl::EplParams(beta + hb, theta)) -
             epl::log_likelihood(score_data,
                                 epl::EplParams(beta - hb, theta))) /
            (2.0 * hb);
        const double fd_t =
            (epl::log_likelihood(score_data,
                                 epl::EplParams(beta, theta + ht)) -
             epl::log_likelihood(score_data,
                                 epl::EplParams(beta, theta - ht))) /
            (2.0 * ht);
        check_rel(fmt("score[beta] beta=%g theta=%g", beta, theta), s[0],
                  fd_b, 1e-5);
        check_rel(fmt("score[theta] beta=%g theta=%g", beta, theta), s[1],
                  fd_t, 1e-5);
    }

    for (const auto& [beta, theta] :
         {std::pair{1.0, 1.0}, std::pair{0.1, 5.0}}) {
        const auto gaps =
            epl::score_expectation_identities(epl::EplParams(beta, theta));
        check_abs(fmt("score identity [beta] beta=%g theta=%g", beta, theta),
                  gaps[0], 0.0, 1e-7);
        check_abs(fmt("score identity [theta] beta=%g theta=%g", beta, theta),
                  gaps[1], 0.0, 1e-7);
    }

    {
        const epl::EplParams p(1.0, 1.0);
        const std::size_t reps = 10000, n = 100;
        long double sb = 0.0L, st = 0.0L, sbb = 0.0L, stt = 0.0L, sbt = 0.0L;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto s = epl::score(epl::sample(n, p, 130000 + r), p);
            sb += s[0];
            st += s[1];
            sbb += static_cast<long double>(s[0]) * s[0];
            stt += static_cast<long double>(s[1]) * s[1];
            sbt += static_cast<long double>(s[0]) * s[1];
        }
        const double mb = static_cast<double>(sb / reps);
        const double mt = static_cast<double>(st / reps);
        const epl::Matrix2 k = epl::fisher_information(p, n);
        check_rel("Fisher vs MC score covariance [beta,beta]",
                  static_cast<double>(sbb / reps) - mb * mb, k[0][0], 0.05);
        check_rel("Fisher vs MC score covariance [theta,theta]",
                  static_cast<double>(stt / reps) - mt * mt, k[1][1], 0.05);
        check_rel("Fisher vs MC score covariance [beta,theta]",
                  static_cast<double>(sbt / reps) - mb * mt, k[0][1], 0.05);
    }
}

void criterion6() {
    for (double beta : {0.1, 1.0, 10.0}) {
        for (double theta : {0.1, 1.0, 10.0}) {
            const epl::EplParams p(beta, theta);
            const auto r = epl::integrate_semi_infinite(
                [&](double x) { return epl::pdf(x, p); });
            check_abs(fmt("pdf normalization beta=%g theta=%g", beta, theta),
                      r.value, 1.0, 1e-8);
        }
    }

    for (const auto& [beta, theta] :
         {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
        const epl::EplParams p(beta, theta);
        double worst = 0.0;
        for (double u : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            const double x = epl::quantile(u, p);
            const double h = 1e-6 * x;
            const double fd =
                (epl::cdf(x + h, p) - epl::cdf(x - h, p)) / (2.0 * h);
            worst = std::max(worst, rel_diff(fd, epl::pdf(x, p)));
        }
        check_abs(fmt("cdf derivative vs pdf beta=%g theta=%g", beta, theta),
                  worst, 0.0, 1e-6);
    }

    for (const auto& [beta, theta] :
         {std::pair{1.0, 1.0}, std::pair{0.1, 5.0}, std::pair{5.0, 0.2}}) {
        const epl::EplParams p(beta, theta);
        double worst = 0.0;
        for (double u : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99,
                         0.999}) {
            worst = std::max(worst,
                             std::abs(epl::cdf(epl::quantile(u, p), p) - u));
        }
        check_abs(fmt("quantile round-trip beta=%g theta=%g", beta, theta),
                  worst, 0.0, 1e-8);
    }

    {
        const epl::EplParams p(2.0, 1.0);
        bool decreasing = true, above_limit = true;
        double prev = epl::hazard(1e-9, p);
        for (double x : {0.1, 0.3, 1.0, 2.0, 5.0, 10.0, 30.0}) {
            const double h = epl::hazard(x, p);
            decreasing = decreasing && h < prev;
            above_limit = above_limit && h >= p.beta;
            prev = h;
        }
        check_true("hazard strictly decreasing", decreasing);
        check_true("hazard stays above its limit", above_limit);
        check_rel("hazard limit equals beta", epl::hazard(300.0, p), p.beta,
                  1e-12);
    }

    {
        const epl::EplParams p(1.0, 1.0);
        check_rel("mean residual life at zero equals the mean",
                  epl::mean_residual_life(0.0, p), epl::mean(p), 1e-8);
        bool nondecreasing = true;
        double prev = epl::mean_residual_life(0.0, p);
        for (double x : {0.5, 1.0, 2.0, 5.0}) {
            const double m = epl::mean_residual_life(x, p);
            nondecreasing = nondecreasing && m >= prev;
            prev = m;
        }
        check_true("mean residual life non-decreasing", nondecreasing);
    }

    {
        const epl::EplParams p(1.0, 1.0);
        const epl::TwoSampleKsResult two = epl::ks_two_sample(
            epl::sample(100000, p, 11), epl::sample_compound(100000, p, 22));
        check_true("compound construction matches inverse transform",
                   two.p_value > 0.01, fmt("two-sample p=%.4g", two.p_value));
    }
}

void criterion7() {
    {
        const epl::EplParams truth(1.0, 1.0);
        const epl::FitResult fit =
            epl::fit_mle(epl::sample(100000, truth, 424242));
        check_true("large-sample fit converged", fit.converged);
        check_true("beta recovered within 3 standard errors",
                   std::abs(fit.params.beta - truth.beta) <=
                       3.0 * fit.std_errors[0],
                   fmt("estimate %.6g, se %.3g", fit.params.beta,
                       fit.std_errors[0]));
        check_true("theta recovered within 3 standard errors",
                   std::abs(fit.params.theta - truth.theta) <=
                       3.0 * fit.std_errors[1],
                   fmt("estimate %.6g, se %.3g", fit.params.theta,
                       fit.std_errors[1]));
    }

    {
        const epl::EplParams truth(1.0, 1.0);
        const std::size_t reps = 2000, n = 200;
        std::size_t hit_b = 0, hit_t = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            try {
                const epl::FitResult fit =
                    epl::fit_mle(epl::sample(n, truth, 700000 + r));
                if (!fit.converged) continue;
                const auto [ci_b, ci_t] =
                    epl::confidence_intervals(fit, 0.95);
                if (ci_b[0] <= truth.beta && truth.beta <= ci_b[1]) ++hit_b;
                if (ci_t[0] <= truth.theta && truth.theta <= ci_t[1])
                    ++hit_t;
            } catch (const std::exception&) {
                continue;
            }
        }
        const double cov_b = static_cast<double>(hit_b) / reps;
        const double cov_t = static_cast<double>(hit_t) / reps;
        check_true("Wald coverage for beta in [0.93, 0.97]",
                   cov_b >= 0.93 && cov_b <= 0.97,
                   fmt("coverage %.4g", cov_b));
        check_true("Wald coverage for theta in [0.93, 0.97]",
                   cov_t >= 0.93 && cov_t <= 0.97,
                   fmt("coverage %.4g", cov_t));
    }

    {
        const epl::EplParams p(1.0, 1.0);
        const epl::ExtremeValueReport big =
            epl::extreme_value_check(10000, p, 5000, 42);
        check_true("scaled minima close to the unit exponential",
                   big.minima_ks_distance < 0.05,
                   fmt("KS distance %.4g", big.minima_ks_distance));
        check_true("shifted maxima close to the Gumbel law",
                   big.maxima_ks_distance < 0.08,
                   fmt("KS distance %.4g", big.maxima_ks_distance));

        int shrank = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const epl::ExtremeValueReport small =
                epl::extreme_value_check(100, p, 5000, seed);
            const epl::ExtremeValueReport large =
                epl::extreme_value_check(10000, p, 5000, seed);
            if (large.minima_ks_distance + large.maxima_ks_distance <
                small.minima_ks_distance + small.maxima_ks_distance)
                ++shrank;
        }
        check_true("limit distances shrink from n=100 to n=10000",
                   shrank >= 3, fmt("%.0f of 5 seeds", shrank));
    }
}

struct Criterion {
    int k;
    const char* title;
    double budget_s;
    void (*fn)();
};

const Criterion kCriteria[] = {
    {1, "moment summary reference table", 1.0, criterion1},
    {2, "order statistic moment reference table", 30.0, criterion2},
    {3, "air-conditioning fit comparison", 10.0, criterion3},
    {4, "vinyl chloride fit comparison", 10.0, criterion4},
    {5, "independent oracle suite", 300.0, criterion5},
    {6, "distributional invariants", 120.0, criterion6},
    {7, "statistical asymptotics", 600.0, criterion7},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
            return 2;
        }
    }
    if (selected < 0 || selected > 7) {
        std::fprintf(stderr, "error: criterion must lie in 1..7\n");
        return 2;
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (selected != 0 && c.k != selected) continue;
        std::printf("criterion %d: %s\n", c.k, c.title);
        g_misses = 0;
        const auto t0 = std::chrono::steady_clock::now();
        c.fn();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (elapsed > c.budget_s) {
            ++g_misses;
            std::printf("  [MISS] runtime %.1f s exceeds budget %.0f s\n",
                        elapsed, c.budget_s);
        }
        const bool pass = g_misses == 0;
        if (!pass) ++failures;
        std::printf("[%s] criterion %d: %s (%.1f s, budget %.0f s)\n",
                    pass ? "PASS" : "FAIL", c.k, c.title, elapsed,
                    c.budget_s);
    }
    return failures == 0 ? 0 : 1;
}
