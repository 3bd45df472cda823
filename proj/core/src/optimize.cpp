#include <epl/optimize.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace epl {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

void OptimOptions::validate() const {
    if (!(grad_tol > 0.0) || !std::isfinite(grad_tol))
        throw std::domain_error("OptimOptions: grad_tol must be positive");
    if (max_iters < 1)
        throw std::domain_error("OptimOptions: max_iters must be >= 1");
}

OptimResult minimize_bfgs(const ObjectiveFn& f, const GradientFn& grad,
                          std::vector<double> x0, const OptimOptions& opts) {
    opts.validate();
    const std::size_t n = x0.size();
    if (n == 0) throw std::domain_error("minimize_bfgs: empty start point");

    OptimResult res;
    std::vector<double> x = std::move(x0);
    double fx = f(x);
    if (!std::isfinite(fx))
        throw std::domain_error(
            "minimize_bfgs: objective not finite at the start point");
    std::vector<double> g = grad(x);

    // Inverse Hessian approximation, started at the identity.
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;

    if (opts.keep_trace) res.trace.push_back({x, fx});

    int stalled = 0;
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        if (norm(g) < opts.grad_tol) break;

        std::vector<double> d(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i] -= H[i][j] * g[j];
        double slope = dot(d, g);
        if (!(slope < 0.0)) {
            // Direction lost descent; reset to steepest descent.
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = -g[i];
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] = (i == j) ? 1.0 : 0.0;
            }
            slope = dot(d, g);
        }

        // Armijo backtracking. The small absolute slack keeps progress
        // possible near the optimum, where the true decrease per step falls
        // below the floating-point resolution of the objective itself.
        const double c1 = 1e-4;
        const double slack = 4e-16 * std::abs(fx);
        double t = 1.0;
        std::vector<double> x_new(n);
        double f_new = 0.0;
        bool accepted = false;
        for (int back = 0; back < 60; ++back) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + t * d[i];
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= fx + c1 * t * slope + slack) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        res.iterations = iter + 1;
        if (!accepted) break;  // line search stalled at numerical precision

        std::vector<double> g_new = grad(x_new);
        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = g_new[i] - g[i];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * norm(s) * norm(y)) {
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i][j] * y[j];
            const double yHy = dot(y, Hy);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] += -rho * (s[i] * Hy[j] + Hy[i] * s[j]) +
                               rho * rho * yHy * s[i] * s[j] +
                               rho * s[i] * s[j];
        }
        const double decrease = fx - f_new;
        x = std::move(x_new);
        fx = f_new;
        g = std::move(g_new);
        if (opts.keep_trace) res.trace.push_back({x, fx});

        // The slack lets noise-level steps through the Armijo test, so the
        // line search never fails outright; treat a run of them as
        // convergence to the objective's floating-point resolution.
        if (decrease <= slack) {
            if (++stalled >= 3) break;
        } else {
            stalled = 0;
        }
    }

    res.x = std::move(x);
    res.f = fx;
    res.grad_norm = norm(g);
    res.converged = res.grad_norm < opts.grad_tol;
    return res;
}

OptimResult minimize_nelder_mead(const ObjectiveFn& f, std::vector<double> x0,
                                 const OptimOptions& opts) {
    opts.validate();
    const std::size_t n = x0.size();
    if (n == 0)
        throw std::domain_error("minimize_nelder_mead: empty start point");

    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        return std::isfinite(v) ? v
                                : std::numeric_limits<double>::infinity();
    };
    simplex.push_back({x0, eval(x0)});
    if (!std::isfinite(simplex[0].f))
        throw std::domain_error(
            "minimize_nelder_mead: objective not finite at the start point");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> xi = x0;
        xi[i] += 0.05 * std::max(1.0, std::abs(x0[i]));
        simplex.push_back({xi, eval(xi)});
    }
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::sort(simplex.begin(), simplex.end(), by_f);

    OptimResult res;
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        res.iterations = iter + 1;
        const double spread = simplex.back().f - simplex.front().f;
        if (spread < opts.grad_tol * (1.0 + std::abs(simplex.front().f))) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i)
                centroid[i] += simplex[v].x[i] / static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + coef * (centroid[i] - simplex.back().x[i]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr < simplex.front().f) {
            std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            if (fe < fr)
                simplex.back() = {std::move(xe), fe};
            else
                simplex.back() = {std::move(xr), fr};
        } else if (fr < simplex[n - 1].f) {
            simplex.back() = {std::move(xr), fr};
        } else {
            const bool outside = fr < simplex.back().f;
            std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, simplex.back().f)) {
                simplex.back() = {std::move(xc), fc};
            } else {
                // Shrink towards the best vertex.
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v].x[i] = simplex[0].x[i] +
                                          0.5 * (simplex[v].x[i] -
                                                 simplex[0].x[i]);
                    simplex[v].f = eval(simplex[v].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_f);
        if (opts.keep_trace)
            res.trace.push_back({simplex.front().x, simplex.front().f});
    }

    res.x = simplex.front().x;
    res.f = simplex.front().f;
    res.grad_norm = std::numeric_limits<double>::quiet_NaN();
    return res;
}

std::vector<double> finite_difference_gradient(const ObjectiveFn& f,
                                               const std::vector<double>& x,
                                               double rel_step) {
    std::vector<double> g(x.size());
    std::vector<double> xp = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace epl
