#include <epl/competitors.hpp>

#include <epl/optimize.hpp>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace epl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_x_positive(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("competitor pdf: x must be finite and > 0");
}

void check_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::domain_error(std::string("competitor: ") + what +
                                " must be finite and > 0");
}

void check_unit(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0 || v >= 1.0)
        throw std::domain_error(std::string("competitor: ") + what +
                                " must lie in (0,1)");
}

double log_pdf_raw(Family family, double x, double beta, double s) {
    const double w = std::exp(-beta * x);
    switch (family) {
        case Family::eg:
            return std::log(beta) + std::log1p(-s) - beta * x -
                   2.0 * std::log1p(-s * w);
        case Family::ep:
            return std::log(s) + std::log(beta) - s - beta * x + s * w -
                   std::log(-std::expm1(-s));
        case Family::el:
            return std::log(beta) + std::log1p(-s) - beta * x -
                   std::log(-std::log(s)) - std::log1p(-(1.0 - s) * w);
        case Family::weibull:
            return std::log(s) + s * std::log(beta) +
                   (s - 1.0) * std::log(x) - std::pow(beta * x, s);
        case Family::gamma:
            return s * std::log(beta) + (s - 1.0) * std::log(x) - beta * x -
                   boost::math::lgamma(s);
    }
    throw std::logic_error("log_pdf_raw: unknown family");
}

// Per-observation gradient of log pdf in the natural parameters (beta, s).
std::array<double, 2> dlog_pdf_raw(Family family, double x, double beta,
                                   double s) {
    const double w = std::exp(-beta * x);
    switch (family) {
        case Family::eg: {
            const double G = 1.0 - s * w;
            return {1.0 / beta - x - 2.0 * s * x * w / G,
                    -1.0 / (1.0 - s) + 2.0 * w / G};
        }
        case Family::ep:
            return {1.0 / beta - x - s * x * w,
                    1.0 / s - 1.0 + w - 1.0 / std::expm1(s)};
        case Family::el: {
            const double G = 1.0 - (1.0 - s) * w;
            return {1.0 / beta - x - (1.0 - s) * x * w / G,
                    -1.0 / (1.0 - s) + 1.0 / (s * (-std::log(s))) - w / G};
        }
        case Family::weibull: {
            const double pw = std::pow(beta * x, s);
            const double lbx = std::log(beta * x);
            return {(s / beta) * (1.0 - pw), 1.0 / s + lbx * (1.0 - pw)};
        }
        case Family::gamma:
            return {s / beta - x,
                    std::log(beta) + std::log(x) - boost::math::digamma(s)};
    }
    throw std::logic_error("dlog_pdf_raw: unknown family");
}

struct FitProblem {
    bool logit_second;
    std::function<double(double, double, double)> logpdf;  // (x, beta, s)
    std::function<std::array<double, 2>(double, double, double)> dlogpdf;
    std::vector<std::array<double, 2>> starts;  // (beta0, s0)
};

double logit(double p) { return std::log(p / (1.0 - p)); }

FitResult fit_two_param(const DataSet& data, const FitProblem& prob,
                        const FitConfig& cfg) {
    data.validate();
    cfg.validate();
    const std::vector<double>& xs = data.values;
    if (std::all_of(xs.begin(), xs.end(),
                    [&](double v) { return v == xs.front(); }))
        throw std::domain_error(
            "fit_competitor: degenerate data (all values equal)");

    auto to_natural = [&](const std::vector<double>& u) {
        const double beta = std::exp(u[0]);
        const double s =
            prob.logit_second ? 1.0 / (1.0 + std::exp(-u[1])) : std::exp(u[1]);
        return std::array<double, 2>{beta, s};
    };
    auto loglik = [&](double beta, double s) {
        double acc = 0.0;
        for (double x : xs) acc += prob.logpdf(x, beta, s);
        return std::isfinite(acc) ? acc : kNegInf;
    };
    auto objective = [&](const std::vector<double>& u) {
        const auto nat = to_natural(u);
        if (!std::isfinite(nat[0]) || nat[0] <= 0.0 ||
            !std::isfinite(nat[1]) || nat[1] <= 0.0 ||
            (prob.logit_second && nat[1] >= 1.0))
            return std::numeric_limits<double>::infinity();
        return -loglik(nat[0], nat[1]);
    };
    auto score_natural = [&](double beta, double s) {
        std::array<double, 2> g{0.0, 0.0};
        for (double x : xs) {
            const auto d = prob.dlogpdf(x, beta, s);
            g[0] += d[0];
            g[1] += d[1];
        }
        return g;
    };
    auto gradient = [&](const std::vector<double>& u) {
        const auto nat = to_natural(u);
        const auto g = score_natural(nat[0], nat[1]);
        const double chain2 =
            prob.logit_second ? nat[1] * (1.0 - nat[1]) : nat[1];
        return std::vector<double>{-g[0] * nat[0], -g[1] * chain2};
    };

    OptimOptions opts;
    opts.grad_tol = cfg.grad_tol;
    opts.max_iters = cfg.max_iters;
    opts.keep_trace = cfg.keep_trace;

    struct Candidate {
        OptimResult opt;
        std::array<double, 2> nat;
    };
    std::vector<Candidate> candidates;
    for (const auto& start : prob.starts) {
        std::vector<double> u0{
            std::log(start[0]),
            prob.logit_second ? logit(start[1]) : std::log(start[1])};
        OptimResult r =
            cfg.optimizer == Optimizer::quasi_newton_with_analytic_score
                ? minimize_bfgs(objective, gradient, u0, opts)
                : minimize_nelder_mead(objective, u0, opts);
        const auto nat = to_natural(r.x);
        candidates.push_back({std::move(r), nat});
    }
    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates) {
        if (c.opt.f < best->opt.f - 1e-9 ||
            (std::abs(c.opt.f - best->opt.f) <= 1e-9 &&
             c.nat[1] < best->nat[1]))
            best = &c;
    }

    const double beta_hat = best->nat[0];
    const double s_hat = best->nat[1];
    FitResult out{EplParams(beta_hat, s_hat), 0.0, false, 0, {}, {}, {}};
    out.loglik = -best->opt.f;
    out.iterations = best->opt.iterations;

    const auto g = score_natural(beta_hat, s_hat);
    const double chain2 =
        prob.logit_second ? s_hat * (1.0 - s_hat) : s_hat;
    out.converged =
        std::hypot(g[0] * beta_hat, g[1] * chain2) < cfg.grad_tol;

    // Observed information by central differences of the analytic score.
    Matrix2 J{};
    const std::array<double, 2> at{beta_hat, s_hat};
    for (int j = 0; j < 2; ++j) {
        const double h = 1e-5 * std::max(1.0, std::abs(at[j]));
        std::array<double, 2> hi = at, lo = at;
        hi[j] += h;
        lo[j] -= h;
        const auto sp = score_natural(hi[0], hi[1]);
        const auto sm = score_natural(lo[0], lo[1]);
        for (int i = 0; i < 2; ++i) J[i][j] = -(sp[i] - sm[i]) / (2.0 * h);
    }
    J[0][1] = J[1][0] = 0.5 * (J[0][1] + J[1][0]);
    if (is_spd_2x2(J)) {
        out.covariance = invert_spd_2x2(J);
        out.std_errors = {std::sqrt(out.covariance[0][0]),
                          std::sqrt(out.covariance[1][1])};
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.covariance = {{{nan, nan}, {nan, nan}}};
        out.std_errors = {nan, nan};
    }

    if (cfg.keep_trace) {
        for (const OptimTracePoint& tp : best->opt.trace) {
            const auto nat = to_natural(tp.x);
            out.optimizer_trace.push_back(
                {EplParams(nat[0], nat[1]), -tp.f});
        }
    }
    return out;
}

}  // namespace

void CompetitorModel::validate() const {
    check_positive(params[0], "beta");
    switch (family) {
        case Family::eg:
        case Family::el:
            check_unit(params[1], "p");
            break;
        case Family::ep:
            check_positive(params[1], "lambda");
            break;
        case Family::weibull:
            check_positive(params[1], "alpha");
            break;
        case Family::gamma:
            check_positive(params[1], "gamma");
            break;
    }
}

double competitor_log_pdf(double x, const CompetitorModel& m) {
    m.validate();
    check_x_positive(x);
    return log_pdf_raw(m.family, x, m.params[0], m.params[1]);
}

double competitor_pdf(double x, const CompetitorModel& m) {
    return std::exp(competitor_log_pdf(x, m));
}

double competitor_cdf(double x, const CompetitorModel& m) {
    m.validate();
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("competitor_cdf: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    const double beta = m.params[0], s = m.params[1];
    const double w = std::exp(-beta * x);
    switch (m.family) {
        case Family::eg:
            return 1.0 - (1.0 - s) * w / (1.0 - s * w);
        case Family::ep: {
            const double v = -std::expm1(-beta * x);
            return std::expm1(-s * v) / std::expm1(-s);
        }
        case Family::el:
            return 1.0 - std::log1p(-(1.0 - s) * w) / std::log(s);
        case Family::weibull:
            return -std::expm1(-std::pow(beta * x, s));
        case Family::gamma:
            return boost::math::gamma_p(s, beta * x);
    }
    throw std::logic_error("competitor_cdf: unknown family");
}

double competitor_log_likelihood(const DataSet& data,
                                 const CompetitorModel& m) {
    data.validate();
    m.validate();
    double acc = 0.0;
    for (double x : data.values)
        acc += log_pdf_raw(m.family, x, m.params[0], m.params[1]);
    return std::isfinite(acc) ? acc : kNegInf;
}

std::array<double, 2> competitor_score(const DataSet& data,
                                       const CompetitorModel& m) {
    data.validate();
    m.validate();
    std::array<double, 2> acc{0.0, 0.0};
    for (double x : data.values) {
        const auto g = dlog_pdf_raw(m.family, x, m.params[0], m.params[1]);
        acc[0] += g[0];
        acc[1] += g[1];
    }
    return acc;
}

FitResult fit_competitor(const DataSet& data, Family family,
                         const FitConfig& cfg) {
    data.validate();
    double sum = 0.0;
    for (double x : data.values) sum += x;
    const double mean = sum / static_cast<double>(data.size());
    const double rate0 = 1.0 / mean;

    FitProblem prob;
    prob.logpdf = [family](double x, double beta, double s) {
        return log_pdf_raw(family, x, beta, s);
    };
    prob.dlogpdf = [family](double x, double beta, double s) {
        return dlog_pdf_raw(family, x, beta, s);
    };
    switch (family) {
        case Family::eg:
        case Family::el:
            prob.logit_second = true;
            prob.starts = {{rate0, 0.2}, {rate0, 0.5}, {rate0, 0.8}};
            break;
        case Family::ep:
            prob.logit_second = false;
            prob.starts = {{rate0, 0.5}, {rate0, 1.5}, {rate0, 5.0}};
            break;
        case Family::weibull:
            prob.logit_second = false;
            prob.starts = {{rate0, 0.5}, {rate0, 1.0}, {rate0, 2.0}};
            break;
        case Family::gamma: {
            prob.logit_second = false;
            double ss = 0.0;
            for (double x : data.values) ss += (x - mean) * (x - mean);
            const double var = ss / static_cast<double>(data.size());
            const double g0 =
                var > 0.0
                    ? std::clamp(mean * mean / var, 0.01, 1000.0)
                    : 1.0;
            prob.starts = {{0.5 * g0 / mean, 0.5 * g0},
                           {g0 / mean, g0},
                           {2.0 * g0 / mean, 2.0 * g0}};
            break;
        }
    }
    return fit_two_param(data, prob, cfg);
}

double weibull_variant_pdf(double x, double beta, double alpha) {
    check_x_positive(x);
    check_positive(beta, "beta");
    check_positive(alpha, "alpha");
    return alpha * std::pow(beta, alpha) * std::pow(x, alpha - 1.0) *
           std::exp(-beta * x);
}

FitResult fit_weibull_variant(const DataSet& data, const FitConfig& cfg) {
    data.validate();
    double sum = 0.0;
    for (double x : data.values) sum += x;
    const double rate0 = static_cast<double>(data.size()) / sum;

    FitProblem prob;
    prob.logit_second = false;
    prob.logpdf = [](double x, double beta, double s) {
        return std::log(s) + s * std::log(beta) + (s - 1.0) * std::log(x) -
               beta * x;
    };
    prob.dlogpdf = [](double x, double beta, double s) {
        return std::array<double, 2>{s / beta - x,
                                     1.0 / s + std::log(beta * x)};
    };
    prob.starts = {{rate0, 1.0}};
    return fit_two_param(data, prob, cfg);
}

Family family_from_string(const std::string& name) {
    if (name == "eg") return Family::eg;
    if (name == "ep") return Family::ep;
    if (name == "el") return Family::el;
    if (name == "weibull") return Family::weibull;
    if (name == "gamma") return Family::gamma;
    throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family f) {
    switch (f) {
        case Family::eg: return "eg";
        case Family::ep: return "ep";
        case Family::el: return "el";
        case Family::weibull: return "weibull";
        case Family::gamma: return "gamma";
    }
    throw std::logic_error("family_name: unknown family");
}

}  // namespace epl
