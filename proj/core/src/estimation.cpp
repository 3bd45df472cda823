#include <epl/estimation.hpp>

#include <epl/moments.hpp>
#include <epl/optimize.hpp>
#include <epl/quadrature.hpp>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double loglik_raw(const std::vector<double>& xs, double beta, double theta) {
    if (!std::isfinite(beta) || beta <= 0.0 || !std::isfinite(theta) ||
        theta <= 0.0)
        return kNegInf;
    const double n = static_cast<double>(xs.size());
    const double C = 1.0 + theta * (3.0 + theta);
    double acc = n * (std::log(beta) + 2.0 * std::log(theta) +
                      2.0 * std::log1p(theta) - std::log(C));
    for (double x : xs) {
        const double w = std::exp(-beta * x);
        const double a3 = 3.0 + theta - w;
        const double a1 = 1.0 + theta - w;
        if (!(a3 > 0.0) || !(a1 > 0.0)) return kNegInf;
        acc += -beta * x + std::log(a3) - 3.0 * std::log(a1);
    }
    return std::isfinite(acc) ? acc : kNegInf;
}

std::array<double, 2> score_raw(const std::vector<double>& xs, double beta,
                                double theta) {
    const double n = static_cast<double>(xs.size());
    const double C = 1.0 + theta * (3.0 + theta);
    double u_beta = n / beta;
    double u_theta =
        n * (2.0 / theta + 2.0 / (1.0 + theta) - (3.0 + 2.0 * theta) / C);
    for (double x : xs) {
        const double w = std::exp(-beta * x);
        const double d3 = 3.0 + theta - w;
        const double d1 = 1.0 + theta - w;
        u_beta += -x + x * w / d3 - 3.0 * x * w / d1;
        u_theta += 1.0 / d3 - 3.0 / d1;
    }
    return {u_beta, u_theta};
}

struct Candidate {
    OptimResult opt;
    double theta_hat;
};

}  // namespace

void FitConfig::validate() const {
    if (!(grad_tol > 0.0) || !std::isfinite(grad_tol))
        throw std::domain_error("FitConfig: grad_tol must be positive");
    if (max_iters < 1)
        throw std::domain_error("FitConfig: max_iters must be >= 1");
}

double log_likelihood(const DataSet& data, const EplParams& p) {
    data.validate();
    return loglik_raw(data.values, p.beta, p.theta);
}

std::array<double, 2> score(const DataSet& data, const EplParams& p) {
    data.validate();
    return score_raw(data.values, p.beta, p.theta);
}

std::array<double, 2> score_expectation_identities(const EplParams& p) {
    const double b = p.beta, t = p.theta;
    const double C = 1.0 + t * (3.0 + t);
    auto g = [t](double w) {
        return 1.0 / (3.0 + t - w) - 3.0 / (1.0 + t - w);
    };

    auto expect = [&](auto&& h) {
        QuadResult q = integrate_semi_infinite(
            [&](double x) {
                const double fx = pdf(x, p);
                return fx > 0.0 ? h(x) * fx : 0.0;
            },
            1e-12);
        if (!q.ok)
            throw std::runtime_error(
                "score_expectation_identities: quadrature failed");
        return q.value;
    };

    const double lhs1 = expect([&](double x) { return g(std::exp(-b * x)); });
    const double rhs1 =
        (3.0 + 2.0 * t) / C - 2.0 * (1.0 + 2.0 * t) / (t * (1.0 + t));

    const double lhs2 = expect([&](double x) {
        const double w = std::exp(-b * x);
        return x * w * g(w);
    });
    const double rhs2 =
        t * (1.0 + t * (2.0 + t) * std::log1p(1.0 / t)) / (b * C) - 1.0 / b;

    return {std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)};
}

Matrix2 fisher_information(const EplParams& p, std::size_t n) {
    if (n < 1) throw std::domain_error("fisher_information: n must be >= 1");
    const double b = p.beta, t = p.theta;
    const double C = 1.0 + t * (3.0 + t);

    auto expect = [&](auto&& h) {
        QuadResult q = integrate_semi_infinite(
            [&](double x) {
                const double fx = pdf(x, p);
                return fx > 0.0 ? h(x, std::exp(-b * x)) * fx : 0.0;
            },
            1e-12);
        if (!q.ok)
            throw std::runtime_error("fisher_information: quadrature failed");
        return q.value;
    };

    const double e_x2w_d3 = expect([&](double x, double w) {
        const double d = 3.0 + t - w;
        return x * x * w / (d * d);
    });
    const double e_x2w_d1 = expect([&](double x, double w) {
        const double d = 1.0 + t - w;
        return x * x * w / (d * d);
    });
    const double e_inv_d3 = expect([&](double, double w) {
        const double d = 3.0 + t - w;
        return 1.0 / (d * d);
    });
    const double e_inv_d1 = expect([&](double, double w) {
        const double d = 1.0 + t - w;
        return 1.0 / (d * d);
    });
    const double e_xw_d3 = expect([&](double x, double w) {
        const double d = 3.0 + t - w;
        return x * w / (d * d);
    });
    const double e_xw_d1 = expect([&](double x, double w) {
        const double d = 1.0 + t - w;
        return x * w / (d * d);
    });

    const double k_bb = 1.0 / (b * b) + (3.0 + t) * e_x2w_d3 -
                        3.0 * (1.0 + t) * e_x2w_d1;
    const double k_tt = 2.0 * (1.0 + 2.0 * t * (1.0 + t)) /
                            (t * t * (1.0 + t) * (1.0 + t)) -
                        (7.0 + t * (6.0 + 2.0 * t)) / (C * C) + e_inv_d3 -
                        3.0 * e_inv_d1;
    const double k_tb = e_xw_d3 - 3.0 * e_xw_d1;

    const double dn = static_cast<double>(n);
    Matrix2 K{{{dn * k_bb, dn * k_tb}, {dn * k_tb, dn * k_tt}}};
    if (!is_spd_2x2(K))
        throw std::runtime_error(
            "fisher_information: matrix not positive definite");
    return K;
}

FitResult fit_mle(const DataSet& data, const FitConfig& cfg) {
    data.validate();
    cfg.validate();
    const std::vector<double>& xs = data.values;
    if (std::all_of(xs.begin(), xs.end(),
                    [&](double v) { return v == xs.front(); }))
        throw std::domain_error("fit_mle: degenerate data (all values equal)");

    auto objective = [&](const std::vector<double>& u) {
        return -loglik_raw(xs, std::exp(u[0]), std::exp(u[1]));
    };
    auto gradient = [&](const std::vector<double>& u) {
        const double beta = std::exp(u[0]), theta = std::exp(u[1]);
        const std::array<double, 2> s = score_raw(xs, beta, theta);
        return std::vector<double>{-beta * s[0], -theta * s[1]};
    };

    double sum = 0.0;
    for (double x : xs) sum += x;
    const double beta0 = static_cast<double>(xs.size()) / sum;

    std::vector<std::vector<double>> starts;
    if (cfg.init.has_value()) {
        starts.push_back(
            {std::log(cfg.init->beta), std::log(cfg.init->theta)});
    } else {
        for (double theta0 : {0.5, 1.0, 5.0})
            starts.push_back({std::log(beta0), std::log(theta0)});
    }

    OptimOptions opts;
    opts.grad_tol = cfg.grad_tol;
    opts.max_iters = cfg.max_iters;
    opts.keep_trace = cfg.keep_trace;

    std::vector<Candidate> candidates;
    for (const auto& u0 : starts) {
        OptimResult r =
            cfg.optimizer == Optimizer::quasi_newton_with_analytic_score
                ? minimize_bfgs(objective, gradient, u0, opts)
                : minimize_nelder_mead(objective, u0, opts);
        const double theta_hat = std::exp(r.x[1]);
        candidates.push_back({std::move(r), theta_hat});
    }

    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates) {
        if (c.opt.f < best->opt.f - 1e-9 ||
            (std::abs(c.opt.f - best->opt.f) <= 1e-9 &&
             c.theta_hat < best->theta_hat))
            best = &c;
    }

    // Both optimizers terminate on the objective, whose rounding noise puts
    // a floor of roughly 1e-6 on the reachable score norm for moderate n.
    // Polish with Newton steps on the analytic score itself — a root-finding
    // problem with a far lower noise floor — so the strict convergence
    // criterion below is reachable whenever the optimizer lands in the basin.
    auto grad_u = [&](const std::array<double, 2>& u) {
        const double b = std::exp(u[0]), t = std::exp(u[1]);
        const std::array<double, 2> sc = score_raw(xs, b, t);
        return std::array<double, 2>{b * sc[0], t * sc[1]};
    };
    std::array<double, 2> u{best->opt.x[0], best->opt.x[1]};
    std::array<double, 2> g = grad_u(u);
    double gnorm = std::hypot(g[0], g[1]);
    double lcur = loglik_raw(xs, std::exp(u[0]), std::exp(u[1]));
    std::size_t polish_steps = 0;
    std::size_t polish_budget =
        cfg.max_iters > best->opt.iterations
            ? std::min<std::size_t>(8, cfg.max_iters - best->opt.iterations)
            : 0;
    std::vector<std::array<double, 2>> polish_trace;
    while (polish_budget-- > 0 && std::isfinite(gnorm) &&
           gnorm >= 0.01 * cfg.grad_tol) {
        Matrix2 J{};
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(u[j]));
            std::array<double, 2> up = u, um = u;
            up[j] += h;
            um[j] -= h;
            const std::array<double, 2> gp = grad_u(up);
            const std::array<double, 2> gm = grad_u(um);
            for (int i = 0; i < 2; ++i) J[i][j] = (gp[i] - gm[i]) / (2.0 * h);
        }
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (!std::isfinite(det) || det == 0.0) break;
        const std::array<double, 2> cand{
            u[0] - (J[1][1] * g[0] - J[0][1] * g[1]) / det,
            u[1] - (J[0][0] * g[1] - J[1][0] * g[0]) / det};
        const std::array<double, 2> gc = grad_u(cand);
        const double gcn = std::hypot(gc[0], gc[1]);
        const double lc = loglik_raw(xs, std::exp(cand[0]), std::exp(cand[1]));
        if (!std::isfinite(gcn) || gcn >= gnorm ||
            lc < lcur - 1e-9 * (1.0 + std::abs(lcur)))
            break;
        u = cand;
        g = gc;
        gnorm = gcn;
        lcur = lc;
        ++polish_steps;
        polish_trace.push_back(u);
    }

    const double beta_hat = std::exp(u[0]);
    const double theta_hat = std::exp(u[1]);
    FitResult out{EplParams(beta_hat, theta_hat), 0.0, false, 0, {}, {}, {}};
    out.loglik = loglik_raw(xs, beta_hat, theta_hat);
    out.iterations = best->opt.iterations + polish_steps;

    // Converged means the analytic score (on the optimization scale) is
    // below tolerance, independent of which optimizer produced the point.
    out.converged = gnorm < cfg.grad_tol;

    if (cfg.observed_information) {
        // Observed information: negative Hessian of the log-likelihood in
        // natural parameters, by central differences of the analytic score.
        Matrix2 J{};
        const std::array<double, 2> at{beta_hat, theta_hat};
        for (int j = 0; j < 2; ++j) {
            const double h = 1e-5 * std::max(1.0, std::abs(at[j]));
            std::array<double, 2> hi = at, lo = at;
            hi[j] += h;
            lo[j] -= h;
            const auto sp = score_raw(xs, hi[0], hi[1]);
            const auto sm = score_raw(xs, lo[0], lo[1]);
            for (int i = 0; i < 2; ++i)
                J[i][j] = -(sp[i] - sm[i]) / (2.0 * h);
        }
        J[0][1] = J[1][0] = 0.5 * (J[0][1] + J[1][0]);
        out.covariance = invert_spd_2x2(J);
    } else {
        out.covariance =
            invert_spd_2x2(fisher_information(out.params, xs.size()));
    }
    out.std_errors = {std::sqrt(out.covariance[0][0]),
                      std::sqrt(out.covariance[1][1])};

    if (cfg.keep_trace) {
        for (const OptimTracePoint& tp : best->opt.trace)
            out.optimizer_trace.push_back(
                {EplParams(std::exp(tp.x[0]), std::exp(tp.x[1])), -tp.f});
        for (const std::array<double, 2>& pu : polish_trace) {
            const double b = std::exp(pu[0]), t = std::exp(pu[1]);
            out.optimizer_trace.push_back(
                {EplParams(b, t), loglik_raw(xs, b, t)});
        }
    }
    return out;
}

std::pair<Interval, Interval> confidence_intervals(const FitResult& fit,
                                                   double level) {
    if (!(level > 0.0) || !(level < 1.0))
        throw std::domain_error(
            "confidence_intervals: level must lie in (0,1)");
    if (!fit.converged)
        throw std::runtime_error("confidence_intervals: fit not converged");
    if (!is_spd_2x2(fit.covariance))
        throw std::runtime_error(
            "confidence_intervals: covariance not positive definite");
    const boost::math::normal_distribution<> z_dist(0.0, 1.0);
    const double z = boost::math::quantile(z_dist, 0.5 * (1.0 + level));
    const double b = fit.params.beta, t = fit.params.theta;
    return {Interval{b - z * fit.std_errors[0], b + z * fit.std_errors[0]},
            Interval{t - z * fit.std_errors[1], t + z * fit.std_errors[1]}};
}

Matrix2 invert_spd_2x2(const Matrix2& m) {
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (!(m[0][0] > 0.0) || !(det > 0.0))
        throw std::runtime_error("invert_spd_2x2: not positive definite");
    return Matrix2{{{m[1][1] / det, -m[0][1] / det},
                    {-m[1][0] / det, m[0][0] / det}}};
}

bool is_spd_2x2(const Matrix2& m) {
    const double scale = std::max({std::abs(m[0][0]), std::abs(m[0][1]),
                                   std::abs(m[1][1]), 1e-300});
    if (std::abs(m[0][1] - m[1][0]) > 1e-9 * scale) return false;
    return m[0][0] > 0.0 && m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0.0;
}

}  // namespace epl
