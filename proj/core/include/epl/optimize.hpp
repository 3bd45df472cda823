#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace epl {

struct OptimOptions {
    double grad_tol = 1e-8;
    std::size_t max_iters = 500;
    bool keep_trace = false;
    void validate() const;
};

struct OptimTracePoint {
    std::vector<double> x;
    double f;
};

struct OptimResult {
    std::vector<double> x;
    double f = 0.0;
    double grad_norm = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<OptimTracePoint> trace;
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;
using GradientFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

// Quasi-Newton (BFGS) minimization with Armijo backtracking line search.
// Convergence means the gradient norm dropped below grad_tol.
OptimResult minimize_bfgs(const ObjectiveFn& f, const GradientFn& grad,
                          std::vector<double> x0,
                          const OptimOptions& opts = {});

// Derivative-free Nelder-Mead simplex minimization. The simplex is shrunk
// until its function-value spread falls below grad_tol * (1 + |f_best|);
// OptimResult::converged reflects that criterion.
OptimResult minimize_nelder_mead(const ObjectiveFn& f, std::vector<double> x0,
                                 const OptimOptions& opts = {});

// Central-difference gradient, step h_i = rel_step * max(1, |x_i|).
std::vector<double> finite_difference_gradient(const ObjectiveFn& f,
                                               const std::vector<double>& x,
                                               double rel_step = 1e-5);

}  // namespace epl
