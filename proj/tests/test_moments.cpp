#include <doctest.h>

#include <epl/distribution.hpp>
#include <epl/moments.hpp>
#include <epl/quadrature.hpp>
#include <epl/special.hpp>

#include <cmath>
#include <stdexcept>

#include "test_util.hpp"

namespace {

double moment_by_quadrature(int r, const epl::EplParams& p) {
    const auto q = epl::integrate_semi_infinite([&](double x) {
        const double f = epl::pdf(x, p);
        return f > 0.0 ? std::pow(x, r) * f : 0.0;
    });
    REQUIRE(q.ok);
    return q.value;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("mgf at zero and against quadrature") {
    const epl::EplParams p(1.0, 1.0);
    CHECK(abs_diff(epl::mgf(0.0, p).value, 1.0) <= 1e-12);

    const auto q = epl::integrate_semi_infinite(
        [&](double x) { return std::exp(-x) * epl::pdf(x, p); });
    REQUIRE(q.ok);
    CHECK(abs_diff(epl::mgf(1.0, p).value, q.value) <= 1e-10);

    CHECK_THROWS_AS(epl::mgf(-1.0, p), std::domain_error);
    CHECK_THROWS_AS(epl::mgf(-1.5, p), std::domain_error);
}

TEST_CASE("mgf finite differences recover the moments") {
    const double h = 1e-4;
    for (double theta : {0.5, 1.0}) {
        const epl::EplParams p(1.0, theta);
        const double m0 = epl::mgf(0.0, p).value;
        const double mp = epl::mgf(h, p).value;
        const double mm = epl::mgf(-h, p).value;
        const double d1 = -(mp - mm) / (2.0 * h);
        const double d2 = (mp - 2.0 * m0 + mm) / (h * h);
        CHECK(rel_diff(d1, epl::mean(p)) <= 1e-4);
        CHECK(rel_diff(d2, epl::raw_moment(2, p).value) <= 1e-4);
    }
    // the reference mean at theta = 0.5
    const epl::EplParams half(1.0, 0.5);
    const double fd = -(epl::mgf(h, half).value - epl::mgf(-h, half).value) /
                      (2.0 * h);
    CHECK(abs_diff(fd, 0.4315028) <= 1e-5);
}

TEST_CASE("raw moment reference values") {
    CHECK(abs_diff(epl::raw_moment(1, epl::EplParams(1.0, 0.5)).value,
                   0.4315028) <= 5e-8);
    CHECK(abs_diff(epl::raw_moment(1, epl::EplParams(1.0, 10.0)).value,
                   0.9494062) <= 5e-8);

    const epl::EplParams p(1.0, 1.0);
    CHECK(rel_diff(epl::raw_moment(2, p).value, moment_by_quadrature(2, p)) <=
          1e-10);
    CHECK_THROWS_AS(epl::raw_moment(0, p), std::domain_error);
}

TEST_CASE("raw moments match quadrature across the parameter grid") {
    for (double beta : {0.5, 1.0, 5.0}) {
        for (double theta : {0.5, 1.0, 5.0}) {
            const epl::EplParams p(beta, theta);
            for (int r = 1; r <= 4; ++r) {
                const auto s = epl::raw_moment(r, p);
                CAPTURE(beta);
                CAPTURE(theta);
                CAPTURE(r);
                CHECK(s.converged);
                CHECK(rel_diff(s.value, moment_by_quadrature(r, p)) <= 1e-7);
            }
        }
    }
}

TEST_CASE("summary statistics reference values") {
    CHECK(abs_diff(epl::variance(epl::EplParams(1.0, 1.0)), 0.5966291) <=
          5e-8);
    CHECK(abs_diff(epl::cv_ratio(epl::EplParams(1.0, 10.0)), 1.052966) <=
          5e-7);
}

TEST_CASE("summary statistics identities") {
    for (double beta : {0.5, 1.0, 5.0}) {
        for (double theta : {0.5, 1.0, 5.0}) {
            const epl::EplParams p(beta, theta);
            const double m = epl::mean(p);
            const double m2 = epl::raw_moment(2, p).value;
            CHECK(rel_diff(m, epl::raw_moment(1, p).value) <= 1e-10);
            CHECK(epl::variance(p) >= 0.0);
            CHECK(abs_diff(epl::variance(p), m2 - m * m) <=
                  1e-10 * std::max(1.0, m2));
            CHECK(rel_diff(epl::cv_ratio(p), epl::variance(p) / (m * m)) <=
                  1e-12);
        }
    }
}

TEST_CASE("order statistic density basics") {
    const epl::EplParams p(1.0, 1.0);
    for (double x : {0.1, 0.5, 1.0, 3.0})
        CHECK(rel_diff(epl::order_stat_pdf(x, 1, 1, p), epl::pdf(x, p)) <=
              1e-14);

    const auto q = epl::integrate_semi_infinite(
        [&](double x) { return epl::order_stat_pdf(x, 10, 20, p); });
    REQUIRE(q.ok);
    CHECK(abs_diff(q.value, 1.0) <= 1e-8);

    CHECK_THROWS_AS(epl::order_stat_pdf(1.0, 0, 20, p), std::domain_error);
    CHECK_THROWS_AS(epl::order_stat_pdf(1.0, 21, 20, p), std::domain_error);
    CHECK_THROWS_AS(epl::order_stat_pdf(-1.0, 1, 20, p), std::domain_error);
}

TEST_CASE("order statistic density against the textbook formula") {
    const epl::EplParams p(0.5, 2.0);
    const int n = 12, i = 4;
    // n! / ((i-1)! (n-i)!)
    const double coeff =
        std::exp(std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) -
                 std::lgamma(n - i + 1.0));
    for (double x : {0.2, 0.8, 1.5, 4.0}) {
        const double F = epl::cdf(x, p);
        const double direct = coeff * std::pow(F, i - 1) *
                              std::pow(1.0 - F, n - i) * epl::pdf(x, p);
        CHECK(rel_diff(epl::order_stat_pdf(x, i, n, p), direct) <= 1e-12);
    }
}

TEST_CASE("order statistic densities add up to n times the density") {
    const epl::EplParams p(1.0, 1.0);
    const int n = 20;
    for (double x : {0.1, 0.4, 1.0, 2.5}) {
        double sum = 0.0;
        for (int i = 1; i <= n; ++i)
            sum += epl::order_stat_pdf(x, i, n, p);
        CHECK(rel_diff(sum, n * epl::pdf(x, p)) <= 1e-8);
    }
}

TEST_CASE("order statistic moment reference values in capped mode") {
    const epl::EplParams p(0.1, 0.5);
    epl::SeriesConfig cfg;
    cfg.max_terms = 100;

    const auto m1 = epl::order_stat_moment({20, 20, 1}, p,
                                           epl::SeriesTruncation::fixed_cap,
                                           cfg);
    CHECK(rel_diff(m1.value, 22.10733) <= 1e-6);

    const auto m4 = epl::order_stat_moment({20, 20, 4}, p,
                                           epl::SeriesTruncation::fixed_cap,
                                           cfg);
    CHECK(rel_diff(m4.value, 944798.2) <= 1e-6);

    CHECK(rel_diff(epl::order_stat_moment_quadrature({10, 20, 2}, p),
                   4.899393) <= 1e-6);
}

TEST_CASE("order statistic moments: tolerance mode matches quadrature") {
    const epl::EplParams p(0.1, 0.5);
    for (int i : {10, 20}) {
        for (int r = 1; r <= 4; ++r) {
            const epl::OrderStatSpec spec{i, 20, r};
            const auto s = epl::order_stat_moment(spec, p);
            const double q = epl::order_stat_moment_quadrature(spec, p);
            CAPTURE(i);
            CAPTURE(r);
            CHECK(s.converged);
            CHECK(rel_diff(s.value, q) <= 1e-4);
        }
    }
}

TEST_CASE("order statistic moment flags") {
    const epl::EplParams p(0.1, 0.5);
    // central ranks cancel heavily in the alternating outer sum
    const auto central = epl::order_stat_moment({10, 20, 1}, p);
    CHECK(central.cancellation_warning);
    // high moments of the maximum are dominated by the largest outer term,
    // so the warning stays off there
    const auto top = epl::order_stat_moment({20, 20, 4}, p);
    CHECK_FALSE(top.cancellation_warning);

    CHECK_THROWS_AS(epl::order_stat_moment({0, 20, 1}, p),
                    std::domain_error);
    CHECK_THROWS_AS(epl::order_stat_moment({5, 4, 1}, p), std::domain_error);
    CHECK_THROWS_AS(epl::order_stat_moment({1, 4, 0}, p), std::domain_error);
}

TEST_CASE("extreme value check preconditions") {
    const epl::EplParams p(1.0, 1.0);
    CHECK_THROWS_AS(epl::extreme_value_check(50, p, 5000, 1),
                    std::domain_error);
    CHECK_THROWS_AS(epl::extreme_value_check(1000, p, 10, 1),
                    std::domain_error);
}

TEST_CASE("extreme value limits at large n") {
    const epl::EplParams p(1.0, 1.0);
    const auto rep = epl::extreme_value_check(10000, p, 5000, 42);
    CHECK(rep.n == 10000);
    CHECK(rep.trials == 5000);
    CHECK(rep.minima_ks_distance < 0.05);
    CHECK(rep.maxima_ks_distance < 0.08);
}

TEST_CASE("extreme value distances shrink as n grows") {
    const epl::EplParams p(1.0, 1.0);
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto small = epl::extreme_value_check(100, p, 5000, seed);
        const auto large = epl::extreme_value_check(10000, p, 5000, seed);
        const double d_small =
            small.minima_ks_distance + small.maxima_ks_distance;
        const double d_large =
            large.minima_ks_distance + large.maxima_ks_distance;
        if (d_large < d_small) ++wins;
    }
    CHECK(wins >= 3);  // majority across seeds
}

TEST_CASE("extreme value norming constants scale with n") {
    const epl::EplParams p(1.0, 1.0);
    const auto a = epl::extreme_value_check(100, p, 1000, 3);
    const auto b = epl::extreme_value_check(10000, p, 1000, 3);
    CHECK(b.c_n > a.c_n);
    CHECK(b.b_n > a.b_n);
    // c_n approaches n * f(0+) = 2.4 n for beta = theta = 1
    CHECK(rel_diff(b.c_n, 2.4 * 10000.0) <= 0.01);
}

}  // TEST_SUITE
